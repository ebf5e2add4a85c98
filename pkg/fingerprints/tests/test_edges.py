import random
import statistics

from django.test import SimpleTestCase

from fingerprints.edges import EDGE_FIELD_LAYOUT, SOURCE_FIELDS, TARGET_FIELDS, edge_signature, edge_word
from fingerprints.operators import default_registry
from fingerprints.simhash import hamming
from plans.graph import QDag
from plans.tests.factories import chain, node, random_qdag, shuffled


def field(word, spec):
    return (word >> spec.offset) & spec.max_value


def signature(graph):
    return edge_signature(graph, graph.profile, default_registry())


class EdgeFieldLayoutTests(SimpleTestCase):

    def test_layout_constants(self):
        layout = {spec.name: (spec.width, spec.offset) for spec in EDGE_FIELD_LAYOUT}
        self.assertEqual(layout, {
            "src_operator_code": (6, 58),
            "src_forward_order": (8, 50),
            "src_backward_order": (8, 42),
            "src_in_degree": (3, 39),
            "src_out_degree": (3, 36),
            "tgt_operator_code": (6, 30),
            "tgt_forward_order": (8, 22),
            "tgt_backward_order": (8, 14),
            "tgt_in_degree": (3, 11),
            "tgt_out_degree": (3, 8),
        })

    def test_fields_are_disjoint(self):
        masks = [spec.max_value << spec.offset for spec in EDGE_FIELD_LAYOUT]
        combined = 0
        for mask in masks:
            self.assertEqual(combined & mask, 0)
            combined |= mask
        self.assertEqual(combined & 0xFF, 0)
        self.assertEqual(sum(spec.width for spec in EDGE_FIELD_LAYOUT), 56)


class EdgeSignatureTests(SimpleTestCase):

    def test_single_edge_hand_packed(self):
        # Scan(code 1, fwd 0, bwd 1, in 0, out 1) -> Filter(code 2, fwd 1, bwd 0, in 1, out 0)
        graph = QDag(id="pair", nodes=[node(0, "Scan"), node(1, "Filter")], edges=[(0, 1)])
        expected = (
            (1 << 58) | (0 << 50) | (1 << 42) | (0 << 39) | (1 << 36)
            | (2 << 30) | (1 << 22) | (0 << 14) | (1 << 11) | (0 << 8)
        )
        self.assertEqual(expected, 0x0400041080400800)
        self.assertEqual(signature(graph), expected)

    def test_edgeless_graph_uses_source_fields(self):
        single = QDag(id="one", nodes=[node(0, "Scan")])
        self.assertEqual(signature(single), 1 << 58)
        pair = QDag(id="two", nodes=[node(0, "Scan"), node(1, "Filter")])
        # Scan: fwd 0, bwd 0 ; Filter: fwd 1, bwd 1
        self.assertEqual(signature(pair), (1 << 58) + (2 << 58) + (1 << 50) + (1 << 42))

    def test_edge_order_does_not_matter(self):
        rng = random.Random(21)
        graph = random_qdag(rng, 8, extra_edge_rate=0.5)
        while len(graph.edges) < 10:
            graph = random_qdag(rng, 9, extra_edge_rate=0.5)
        expected = signature(graph)
        for _ in range(20):
            self.assertEqual(signature(shuffled(graph, rng)), expected)

    def test_fields_saturate(self):
        graph = chain(*(["Project"] * 300))
        profile = graph.profile
        self.assertEqual(profile.forward_order[299], 299)
        word = edge_word(298, 299, graph, profile, default_registry())
        src_forward, src_backward = SOURCE_FIELDS[1], SOURCE_FIELDS[2]
        tgt_forward = TARGET_FIELDS[1]
        self.assertEqual(field(word, src_forward), 255)
        self.assertEqual(field(word, tgt_forward), 255)
        self.assertEqual(field(word, src_backward), 1)

    def test_degree_saturates(self):
        leaves = [node(i, "Scan", f"Scan t{i}") for i in range(9)]
        graph = QDag(id="fan", nodes=leaves + [node(9, "Union")], edges=[(i, 9) for i in range(9)])
        word = edge_word(0, 9, graph, graph.profile, default_registry())
        self.assertEqual(field(word, TARGET_FIELDS[3]), 7)

    def test_leaf_operator_change_is_local(self):
        operators = ["Scan", "Filter", "Project", "Exchange", "HashAggregate", "Sort", "Project", "Limit", "Project", "Sort"]
        original = signature(chain(*operators))
        changed = signature(chain("Sort", *operators[1:]))
        self.assertNotEqual(original, changed)

        rng = random.Random(8)
        random_distances = [
            hamming(signature(random_qdag(rng, rng.randrange(5, 30))), signature(random_qdag(rng, rng.randrange(5, 30))))
            for _ in range(100)
        ]
        self.assertLess(hamming(original, changed), statistics.mean(random_distances))

    def test_removing_one_edge_stays_closer_than_unrelated_graphs(self):
        rng = random.Random(12)
        near, far = [], []
        for _ in range(100):
            graph = random_qdag(rng, rng.randrange(10, 40), extra_edge_rate=0.3)
            edges = list(graph.edges)
            del edges[rng.randrange(len(edges))]
            pruned = QDag(id=graph.id, nodes=graph.nodes, edges=edges)
            other = random_qdag(rng, rng.randrange(10, 40), extra_edge_rate=0.3)
            near.append(hamming(signature(graph), signature(pruned)))
            far.append(hamming(signature(graph), signature(other)))
        self.assertLess(statistics.mean(near), statistics.mean(far))
