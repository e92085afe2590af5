from unittest import TestCase

from hypothesis import given, settings
import hypothesis.strategies as st

from ctreepy import (Assignment, BoundExceededError, CheckingTree, Clause, Formula, Literal,
                     PairSet, brute_force_sat, distinct_long_paths, enumerate_long_paths,
                     evaluate, indirect_pairs_oracle, solve_2sat)
from ctreepy.oracle import cross_layer_candidates

A, B, C, D = [Literal(v) for v in range(1, 5)]
NOT_B = Literal(2, False)

def example_formula():
    return Formula([Clause([A, B, C]), Clause([D, NOT_B])], 4)

def contradiction():
    return Formula([Clause([Literal(1)]), Clause([Literal(1, False)])], 1)

literals = st.builds(Literal, st.integers(min_value=1, max_value=5), st.booleans())
two_clauses = st.lists(st.lists(literals, min_size=1, max_size=2).map(Clause), max_size=8)

class TestPairSet(TestCase):

    def test_unordered(self):
        pairs = PairSet([(B, A)])
        self.assertTrue(pairs.contains(A, B))
        self.assertTrue((B, A) in pairs)
        self.assertFalse(pairs.contains(A, C))
        self.assertEqual(len(PairSet([(A, B), (B, A)])), 1)

    def test_reflexive(self):
        self.assertFalse(PairSet([(A, B)]).contains(A, A))
        with self.assertRaises(ValueError):
            PairSet([(A, A)])

    def test_union(self):
        pairs = PairSet([(A, B)]).union([(C, D)])
        self.assertEqual(pairs, PairSet([(C, D), (A, B)]))

class TestBruteForce(TestCase):

    def test_example(self):
        witness = brute_force_sat(example_formula())
        self.assertEqual(witness.to_dimacs(), [-1, -2, 3, -4])
        self.assertTrue(evaluate(example_formula(), witness))

    def test_contradiction(self):
        self.assertIsNone(brute_force_sat(contradiction()))

    def test_empty(self):
        self.assertEqual(brute_force_sat(Formula([], 2)), Assignment({1: False, 2: False}))
        self.assertIsNone(brute_force_sat(Formula([Clause([])], 2)))

    def test_bound(self):
        with self.assertRaises(BoundExceededError):
            brute_force_sat(Formula([], 40))
        with self.assertRaises(ValueError):
            brute_force_sat(Formula([], 3), max_variables=2)

    def test_chunks(self):
        # forces the witness into the second numpy chunk
        n = 17
        f = Formula([Clause([Literal(1)])], n)
        witness = brute_force_sat(f)
        self.assertTrue(witness[1])
        self.assertEqual(len(witness), n)

class TestTwoSat(TestCase):

    def test_unsatisfiable(self):
        x, y = Literal(1), Literal(2)
        clauses = [Clause([x, y]), Clause([Literal(1, False), y]),
                   Clause([x, Literal(2, False)]), Clause([Literal(1, False), Literal(2, False)])]
        self.assertIsNone(solve_2sat(clauses))

    def test_unit_propagation(self):
        witness = solve_2sat([Clause([Literal(1)]), Clause([Literal(1, False), Literal(2)])])
        self.assertEqual(witness, Assignment({1: True, 2: True}))

    def test_prefers_false(self):
        self.assertEqual(solve_2sat([Clause([Literal(1), Literal(2)])]), Assignment({1: False, 2: True}))

    def test_edge_cases(self):
        self.assertEqual(solve_2sat([]), Assignment())
        self.assertIsNone(solve_2sat([Clause([])]))
        with self.assertRaises(ValueError):
            solve_2sat([Clause([A, B, C])])

    @given(two_clauses)
    @settings(max_examples=300)
    def test_agrees_with_brute_force(self, clauses):
        formula = Formula(clauses, 5)
        witness = solve_2sat(clauses)
        self.assertEqual(witness is not None, brute_force_sat(formula) is not None)
        if witness is not None:
            values = dict((v, False) for v in range(1, 6))
            values.update(witness.values)
            self.assertTrue(evaluate(formula, Assignment(values)))

class TestLongPaths(TestCase):

    def test_example(self):
        tree = CheckingTree.from_formula(example_formula())
        paths = [p.literals for p in enumerate_long_paths(tree)]
        self.assertEqual(paths, [(A, D), (A, NOT_B), (B, D), (C, D), (C, NOT_B)])

    def test_picks(self):
        tree = CheckingTree.from_formula(example_formula())
        first = next(enumerate_long_paths(tree))
        self.assertEqual(first.picks, ((0, 0, A), (1, 0, D)))
        self.assertEqual(first.to_assignment(), Assignment({1: True, 4: True}))

    def test_contradiction(self):
        tree = CheckingTree.from_formula(contradiction())
        self.assertEqual(list(enumerate_long_paths(tree)), [])

    def test_distinct(self):
        x = Literal(3)
        tree = CheckingTree.from_formula(Formula([Clause([x, x, x]), Clause([A, B])], 3))
        self.assertEqual(len(list(enumerate_long_paths(tree))), 6)
        self.assertEqual(list(distinct_long_paths(tree)), [(x, A), (x, B)])

    def test_bound(self):
        tree = CheckingTree.from_formula(Formula([Clause([A, B, C])] * 3, 4))
        with self.assertRaises(BoundExceededError):
            list(enumerate_long_paths(tree, bound=26))
        self.assertEqual(len(list(enumerate_long_paths(tree, bound=27))), 27)

class TestPairOracle(TestCase):

    def test_candidates(self):
        tree = CheckingTree.from_formula(example_formula())
        self.assertEqual(cross_layer_candidates(tree),
                         set([(A, D), (A, NOT_B), (B, D), (C, D), (NOT_B, C)]))

    def test_example(self):
        tree = CheckingTree.from_formula(example_formula())
        self.assertEqual(len(indirect_pairs_oracle(tree)), 0)

    def test_no_long_path(self):
        x, y = Literal(1), Literal(2)
        f = Formula([Clause([x]), Clause([Literal(1, False)]), Clause([y])], 2)
        pairs = indirect_pairs_oracle(CheckingTree.from_formula(f))
        self.assertEqual(pairs, PairSet([(x, y), (Literal(1, False), y)]))

    def test_off_path_literal(self):
        # ~a is forced, so a shares no long path with d
        f = Formula([Clause([A, B]), Clause([Literal(1, False)]), Clause([D])], 4)
        pairs = indirect_pairs_oracle(CheckingTree.from_formula(f))
        self.assertTrue(pairs.contains(A, D))
        self.assertFalse(pairs.contains(B, D))
