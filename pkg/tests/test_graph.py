from django.test import SimpleTestCase

from lpalgebra.graph import explore, labelled_isomorphism


def key(n):
    return "node{}".format(n)


def label(n):
    return ("x{}".format(n),)


def ring(n):
    """Each node of a hexagon is joined to both neighbours."""
    return [(0, (n + 1) % 6), (1, (n - 1) % 6)]


def path(n):
    steps = []
    if n > 0:
        steps.append((0, n - 1))
    if n < 5:
        steps.append((1, n + 1))
    return steps


def broken(n):
    return [(0, n + 1)] if n < 2 else [(0, "cannot expand {}".format(n))]


class ExploreTest(SimpleTestCase):
    def test_ring(self):
        graph = explore(0, key, ring, label)
        self.assertEqual(graph.summary(), {"nodes": 6, "edges": 6, "closed": True, "violations": 0})
        self.assertEqual(graph.root, "node0")
        self.assertEqual(graph.payload("node3"), 3)
        self.assertEqual(len(graph.path("node3")), 3)

    def test_edge_labels(self):
        graph = explore(0, key, ring, label)
        data = graph.graph.edges["node0", "node1"]
        self.assertEqual(data["exchanged"], ("x0", "x1"))
        self.assertEqual(data["directions"], {"node0": 0, "node1": 1})

    def test_max_nodes(self):
        graph = explore(0, key, ring, label, max_nodes=4)
        self.assertEqual(graph.number_of_nodes(), 4)
        self.assertFalse(graph.closed)

    def test_max_depth(self):
        graph = explore(0, key, ring, label, max_depth=1)
        self.assertEqual(graph.number_of_nodes(), 3)
        self.assertFalse(graph.closed)

    def test_violations(self):
        graph = explore(0, key, broken, label)
        self.assertEqual(graph.number_of_nodes(), 3)
        self.assertEqual(graph.violations, [{"path": [0, 0, 0], "detail": "cannot expand 2"}])

    def test_workers_do_not_change_the_graph(self):
        serial = explore(0, key, path, label)
        parallel = explore(0, key, path, label, jobs=2)
        self.assertEqual(serial.to_json(), parallel.to_json())


class ExportTest(SimpleTestCase):
    def test_to_json(self):
        data = explore(0, key, path, label).to_json()
        self.assertEqual(data["root"], "node0")
        self.assertTrue(data["closed"])
        self.assertEqual([node["id"] for node in data["nodes"]][:2], ["node0", "node1"])
        self.assertEqual(data["nodes"][5]["path"], [1, 1, 1, 1, 1])
        self.assertEqual(data["nodes"][5]["cluster"], ["x5"])
        self.assertEqual(len(data["edges"]), 5)

    def test_to_dot(self):
        dot = explore(0, key, path, label).to_dot()
        self.assertTrue(dot.startswith("graph exchange {\n"))
        self.assertIn('"node0" -- "node1"', dot)
        self.assertTrue(dot.endswith("}\n"))


class LabelledIsomorphismTest(SimpleTestCase):
    def test_same_graph(self):
        self.assertEqual(
            labelled_isomorphism(explore(0, key, ring, label), explore(3, key, ring, label)),
            (True, ""),
        )

    def test_missing_edge(self):
        first, second = explore(0, key, ring, label), explore(0, key, path, label)
        ok, detail = labelled_isomorphism(first, second)
        self.assertFalse(ok)
        self.assertIn("has no counterpart", detail)

    def test_missing_node(self):
        ok, detail = labelled_isomorphism(
            explore(0, key, path, label), explore(0, key, path, label, max_nodes=3)
        )
        self.assertFalse(ok)
        self.assertEqual(detail, "cluster x3 has no counterpart")
