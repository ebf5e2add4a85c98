import random

from django.test import SimpleTestCase

from plans.exceptions import CycleDetected, DanglingEdge, DuplicateNodeId, EmptyGraph, InvalidNode
from plans.graph import PlanNode, QDag, reverse_edges, structural_profile, validate_dag

from .factories import chain, diamond, node, random_qdag, shuffled


class ValidateDagTests(SimpleTestCase):

    def test_chain_is_accepted(self):
        graph = chain("Scan", "Filter", "Project")
        self.assertIs(validate_dag(graph), graph)

    def test_two_cycle_is_rejected(self):
        with self.assertRaises(CycleDetected) as ctx:
            QDag(id="loop", nodes=[node(0), node(1, "Filter")], edges=[(0, 1), (1, 0)])
        self.assertEqual({u for u, _ in ctx.exception.cycle}, {0, 1})

    def test_self_loop_is_rejected(self):
        with self.assertRaises(CycleDetected):
            QDag(id="self", nodes=[node(0)], edges=[(0, 0)])

    def test_dangling_edge_names_missing_node(self):
        with self.assertRaises(DanglingEdge) as ctx:
            QDag(id="dangling", nodes=[node(0)], edges=[(0, 99)])
        self.assertEqual(ctx.exception.node_id, 99)

    def test_empty_graph(self):
        with self.assertRaises(EmptyGraph):
            QDag(id="empty", nodes=[])

    def test_duplicate_node_id(self):
        with self.assertRaises(DuplicateNodeId):
            QDag(id="dup", nodes=[node(3), node(3, "Filter")])

    def test_fact_must_start_with_operator(self):
        with self.assertRaises(InvalidNode):
            PlanNode(id=0, operator_name="Scan", fact="Filter x")
        with self.assertRaises(InvalidNode):
            PlanNode(id=0, operator_name="", fact="Scan")
        with self.assertRaises(InvalidNode):
            PlanNode(id=-1, operator_name="Scan", fact="Scan")

    def test_properties_are_encoded(self):
        join = PlanNode(
            id=0, operator_name="SortMergeJoin", fact="SortMergeJoin [a], [b]",
            properties={"join_semantics": "leftouter", "partitions": "200", "table": "orders"},
        )
        self.assertEqual(join.properties, {"join_semantics": 2, "num_partitions": 200, "table": "orders"})
        with self.assertRaises(InvalidNode):
            PlanNode(id=1, operator_name="Exchange", fact="Exchange", properties={"partitioning_type": "zigzag"})


class StructuralProfileTests(SimpleTestCase):

    def test_chain(self):
        profile = structural_profile(chain("Scan", "Filter", "Project"))
        self.assertEqual(profile.forward_order, {0: 0, 1: 1, 2: 2})
        self.assertEqual(profile.backward_order, {2: 0, 1: 1, 0: 2})
        self.assertEqual(profile.in_degree, {0: 0, 1: 1, 2: 1})
        self.assertEqual(profile.out_degree, {0: 1, 1: 1, 2: 0})
        self.assertEqual(profile.depth, {0: 1, 1: 2, 2: 3})

    def test_single_node(self):
        profile = structural_profile(QDag(id="one", nodes=[node(7)]))
        self.assertEqual(profile.forward_order, {7: 0})
        self.assertEqual(profile.backward_order, {7: 0})
        self.assertEqual(profile.in_degree, {7: 0})
        self.assertEqual(profile.out_degree, {7: 0})
        self.assertEqual(profile.depth, {7: 1})

    def test_diamond_breaks_ties_by_smaller_id(self):
        profile = structural_profile(diamond())
        self.assertEqual(profile.depth, {0: 1, 1: 2, 2: 2, 3: 3})
        self.assertEqual(profile.forward_order, {0: 0, 1: 1, 2: 2, 3: 3})
        self.assertEqual(profile.backward_order, {3: 0, 1: 1, 2: 2, 0: 3})

    def test_random_dags_respect_edges(self):
        rng = random.Random(7)
        for _ in range(30):
            graph = random_qdag(rng, rng.randrange(2, 60))
            profile = graph.profile
            self.assertEqual(sorted(profile.forward_order.values()), list(range(len(graph.nodes))))
            self.assertEqual(sum(profile.in_degree.values()), len(graph.edges))
            self.assertEqual(sum(profile.out_degree.values()), len(graph.edges))
            for u, v in graph.edges:
                self.assertLess(profile.forward_order[u], profile.forward_order[v])
                self.assertGreater(profile.backward_order[u], profile.backward_order[v])
                self.assertGreater(profile.depth[v], profile.depth[u])

    def test_profile_ignores_list_order(self):
        rng = random.Random(11)
        for _ in range(20):
            graph = random_qdag(rng, rng.randrange(2, 40))
            self.assertEqual(structural_profile(shuffled(graph, rng)), structural_profile(graph))

    def test_repeated_edges_count_towards_degrees(self):
        graph = QDag(id="multi", nodes=[node(0), node(1, "Filter")], edges=[(0, 1), (0, 1)])
        self.assertEqual(graph.profile.out_degree[0], 2)
        self.assertEqual(graph.profile.in_degree[1], 2)


class ReverseEdgesTests(SimpleTestCase):

    def test_chain_reverses(self):
        reversed_graph = reverse_edges(chain("Scan", "Filter", "Project"))
        self.assertEqual(reversed_graph.edges, ((1, 0), (2, 1)))

    def test_edgeless_graph_is_unchanged(self):
        graph = QDag(id="one", nodes=[node(0)])
        self.assertTrue(reverse_edges(graph).structurally_equal(graph))

    def test_reverse_is_an_involution(self):
        rng = random.Random(3)
        for _ in range(50):
            graph = random_qdag(rng, rng.randrange(1, 30))
            self.assertTrue(reverse_edges(reverse_edges(graph)).structurally_equal(graph))
