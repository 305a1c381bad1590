"""
Tests for kpull.finmodel - finite gluing models, their glued spaces, the exact
gluing checks and the K-theory oracle.
"""

import random
import unittest

from fixtures import misplaced_overlap, product, triangle, twisted, two_pieces

from kpull.abgroup import AbelianGroup
from kpull.diagram.family import DERIVED, TRIPLE
from kpull.finmodel import (
    DisjointSet,
    FiniteGluingModel,
    Overlap,
    check_distributive,
    cocycle_check,
    constructive_model,
    eta_maps,
    family_from_model,
    glued_space,
    k_pipeline_oracle,
    model_from_dict,
    model_to_dict,
    multipullback_dim,
    uniform_model,
    verify_canonical_form,
    verify_quotient_isos,
    verify_rebracketing,
    verify_surjectivity_iterd,
)
from kpull.finmodel.ratlinalg import QMatrix, annihilator, induced, intersection, same_span
from kpull.finmodel.verify import iterd_arrows
from kpull.shared.errors import PreconditionViolated, SchemaError

ZERO = AbelianGroup.zero()


class TestModel(unittest.TestCase):
    """Construction and validation of models."""

    def test_defaults_fill_missing_overlaps(self):
        """Pairs without an overlap get an empty one and are flagged."""
        model = product()
        self.assertEqual(model.pairs(), ("12",))
        self.assertEqual(model.overlap("1", "2").points, ())
        self.assertEqual(model.zero_overlaps(), ("12",))

    def test_sizes_and_embeddings(self):
        """size() covers pieces and overlaps; embedding() is iota^i_j."""
        model = triangle()
        self.assertEqual(model.size("1"), 2)
        self.assertEqual(model.size("23"), 1)
        self.assertEqual(dict(model.embedding("3", "2")), {"x": "b"})
        self.assertEqual(len(list(model.triples())), 6)
        self.assertEqual(list(two_pieces().triples()), [])

    def test_rejects_non_injective_maps(self):
        """Overlap maps must be injective."""
        with self.assertRaises(ValueError):
            FiniteGluingModel(
                index=("1", "2"),
                sets={"1": ("a",), "2": ("c", "d")},
                overlaps={"12": Overlap(("y", "z"), {"1": {"y": "a", "z": "a"}, "2": {"y": "c", "z": "d"}})},
            )

    def test_rejects_stray_targets(self):
        """Overlap maps must land in the named set."""
        with self.assertRaises(ValueError):
            FiniteGluingModel(
                index=("1", "2"),
                sets={"1": ("a",), "2": ("c",)},
                overlaps={"12": Overlap(("y",), {"1": {"y": "q"}, "2": {"y": "c"}})},
            )

    def test_rejects_bad_index(self):
        """Index sets are two or three labels from 1, 2, 3."""
        with self.assertRaises(ValueError):
            FiniteGluingModel(index=("1",), sets={"1": ("a",)})
        with self.assertRaises(ValueError):
            FiniteGluingModel(index=("1", "4"), sets={"1": ("a",), "4": ("b",)})

    def test_document_round_trip(self):
        """Models survive model_to_dict / model_from_dict unchanged."""
        rng = random.Random(1)
        for model in (triangle(), product(), twisted(), constructive_model(rng, 5)):
            self.assertEqual(model_from_dict(model_to_dict(model)), model)

    def test_document_errors(self):
        """Malformed documents raise SchemaError."""
        doc = model_to_dict(triangle())
        doc["overlaps"]["12"]["maps"]["1"] = {"x": 3}
        with self.assertRaises(SchemaError):
            model_from_dict(doc)

        doc = model_to_dict(triangle())
        doc["overlaps"]["12"]["maps"]["1"] = {"x": "zz"}
        with self.assertRaises(SchemaError) as ctx:
            model_from_dict(doc)
        self.assertIn("not in X_1", str(ctx.exception))


class TestGluedSpace(unittest.TestCase):
    """Union-find colimits."""

    def test_disjoint_set(self):
        """Unions merge classes; sorted() is canonical."""
        ds = DisjointSet()
        for e in "abcde":
            ds.make_set(e)
        ds.union("a", "b")
        ds.union("d", "e")
        ds.union("b", "e")
        self.assertEqual(ds.sorted(), (("a", "b", "d", "e"), ("c",)))
        self.assertEqual(ds.find("a"), ds.find("d"))

    def test_triangle(self):
        """The three b's become one point."""
        space = glued_space(triangle())
        self.assertEqual(space.size, 4)
        self.assertEqual(space.class_of("1", "b"), space.class_of("3", "b"))
        self.assertNotEqual(space.class_of("1", "a"), space.class_of("2", "a"))
        self.assertEqual(len(space.common("1", "2", "3")), 1)

    def test_twisted_collapses(self):
        """The swap chains every point together."""
        self.assertEqual(glued_space(twisted()).size, 1)

    def test_constructive_models_rebuild_their_universe_size(self):
        """dim B^pi equals the number of glued points for constructive models."""
        rng = random.Random(42)
        for _ in range(40):
            model = constructive_model(rng, 4)
            self.assertEqual(multipullback_dim(model), glued_space(model).size)


class TestGluingChecks(unittest.TestCase):
    """Exact linear algebra checks of the gluing lemmas."""

    def test_dimensions(self):
        """Hand-computed multi-pullback dimensions."""
        self.assertEqual(multipullback_dim(triangle()), 4)
        self.assertEqual(multipullback_dim(two_pieces()), 3)
        self.assertEqual(multipullback_dim(product()), 4)

    def test_triangle_passes_everything(self):
        """A cocycle-passing model satisfies every lemma."""
        model = triangle()
        self.assertTrue(verify_rebracketing(model))
        self.assertTrue(verify_quotient_isos(model))
        self.assertTrue(verify_canonical_form(model))
        self.assertTrue(verify_surjectivity_iterd(model))
        self.assertTrue(check_distributive(model))
        eta = eta_maps(model)
        self.assertTrue(eta.lift_independent)
        self.assertTrue(eta.commutes)

    def test_every_iterated_arrow_is_onto(self):
        """All arrows of the iterated diagram are onto for the triangle."""
        arrows = iterd_arrows(triangle())
        self.assertIn("P = B^pi", arrows)
        self.assertIn("gamma", arrows)
        self.assertEqual([name for name, ok in arrows.items() if not ok], [])

    def test_two_pieces(self):
        """Quotient isomorphisms hold with two pieces; three-piece checks refuse."""
        model = two_pieces()
        self.assertTrue(verify_quotient_isos(model))
        self.assertTrue(check_distributive(model))
        with self.assertRaises(PreconditionViolated):
            verify_rebracketing(model)
        with self.assertRaises(PreconditionViolated):
            eta_maps(model)

    def test_empty_overlap(self):
        """A zero algebra overlap is evaluated literally."""
        self.assertTrue(verify_quotient_isos(product()))

    def test_cocycle_preconditions(self):
        """Checks that need the cocycle condition refuse a failing model."""
        for check in (verify_quotient_isos, verify_surjectivity_iterd, eta_maps):
            with self.assertRaises(PreconditionViolated):
                check(twisted())


class TestRationalLinearAlgebra(unittest.TestCase):
    """The QMatrix helpers behind the checks."""

    def test_induced_map(self):
        """The map between quotients is found when it exists."""
        src = QMatrix.identity(2)
        dst = QMatrix.from_rows([[1, 1]], 2)
        self.assertEqual(induced(src, dst), dst)
        self.assertIsNone(induced(QMatrix.from_rows([[1, 0]], 2), QMatrix.from_rows([[0, 1]], 2)))

    def test_annihilator_and_intersection(self):
        """Annihilators kill the space; intersections are spans."""
        line = QMatrix.from_rows([[1], [1], [0]], 1)
        ann = annihilator(line)
        self.assertEqual(ann.rows, 2)
        self.assertTrue((ann @ line).is_zero())

        plane = QMatrix.from_rows([[1, 0], [0, 1], [0, 0]], 2)
        other = QMatrix.from_rows([[0, 0], [1, 0], [0, 1]], 2)
        self.assertTrue(same_span(intersection(plane, other), QMatrix.from_rows([[0], [1], [0]], 1)))

    def test_empty_shapes(self):
        """Zero dimensions keep their shape."""
        empty = QMatrix.zeros(0, 3)
        self.assertEqual(empty.shape, (0, 3))
        self.assertEqual(empty.kernel().shape, (3, 3))


class TestOracle(unittest.TestCase):
    """K-theory of finite models through the pipeline."""

    def test_triangle(self):
        """K0 = Z^4, K1 = 0."""
        kpair = k_pipeline_oracle(triangle())
        self.assertEqual(kpair.k0, AbelianGroup.free(4))
        self.assertEqual(kpair.k1, ZERO)

    def test_two_pieces(self):
        """A single stage gives Z^3."""
        self.assertEqual(k_pipeline_oracle(two_pieces()).k0, AbelianGroup.free(3))

    def test_product(self):
        """A zero algebra overlap gives the product, Z^4."""
        self.assertEqual(k_pipeline_oracle(product()).k0, AbelianGroup.free(4))

    def test_family_shape(self):
        """Derived K-data, 0/1 restriction matrices and the cocycle certificate."""
        family = family_from_model(triangle())
        self.assertTrue(family.cocycle_certified)
        self.assertEqual(family.node(TRIPLE).k0, AbelianGroup.free(1))
        self.assertEqual(family.pi("1", "2").k0.entries, ((0, 1),))
        self.assertEqual(set(family.provenance.values()), {DERIVED})
        self.assertEqual(family_from_model(product()).notes, {"12": "zero algebra overlap"})

    def test_uncertified_family(self):
        """A failing model gives an uncertified family and no oracle value."""
        self.assertFalse(family_from_model(twisted()).cocycle_certified)
        with self.assertRaises(PreconditionViolated):
            k_pipeline_oracle(twisted())
        with self.assertRaises(PreconditionViolated):
            k_pipeline_oracle(misplaced_overlap())

    def test_constructive_models(self):
        """K0 rank equals the glued-space size on random constructive models."""
        rng = random.Random(9)
        for _ in range(25):
            model = constructive_model(rng, 4)
            kpair = k_pipeline_oracle(model)
            self.assertEqual(kpair.k0, AbelianGroup.free(glued_space(model).size))
            self.assertTrue(kpair.k1.is_zero())


class TestGenerators(unittest.TestCase):
    """Seeded random models."""

    def test_constructive_models_pass_the_cocycle_check(self):
        """Subsets of one universe always glue coherently."""
        rng = random.Random(3)
        for _ in range(100):
            self.assertTrue(cocycle_check(constructive_model(rng, 5)).ok)

    def test_uniform_models_mostly_fail(self):
        """Random injections break the cocycle condition somewhere."""
        rng = random.Random(3)
        results = [cocycle_check(uniform_model(rng, 5)).ok for _ in range(100)]
        self.assertIn(False, results)

    def test_seeded(self):
        """The same seed gives the same model."""
        self.assertEqual(constructive_model(random.Random(5), 6), constructive_model(random.Random(5), 6))
        self.assertEqual(uniform_model(random.Random(5), 6), uniform_model(random.Random(5), 6))

    def test_size_bound(self):
        """No piece exceeds max_size."""
        rng = random.Random(8)
        for _ in range(50):
            model = constructive_model(rng, 3)
            self.assertTrue(all(1 <= model.size(i) <= 3 for i in model.index))


if __name__ == "__main__":
    unittest.main()
