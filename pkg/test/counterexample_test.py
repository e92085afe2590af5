import json
import logging
import os
import shutil
import tempfile
from unittest import TestCase

import numpy as np

from ctreepy import (Clause, DimacsFile, FamilyInstance, Formula, Literal, NoDivergenceError,
                     PairEngine, ReportFile, Step3Mode, Verdict, brute_force_sat, construct_family,
                     decide, evaluate, load_family, random_formula, reproduce_divergence,
                     verify_assumptions)
from ctreepy.counterexample import FamilySearchError, FillerKind, compare_destroyed

GOLDEN = 'test/data/family_n0.cnf'

class TestConstruction(TestCase):

    def setUp(self):
        self.dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.dir)

    def test_golden(self):
        inst = construct_family(0, seed=1)
        path = os.path.join(self.dir, 'family_n0.cnf')
        DimacsFile(path).write(inst.formula, inst.comments)
        with open(path) as f, open(GOLDEN) as g:
            self.assertEqual(f.read(), g.read())

    def test_structure(self):
        inst = construct_family(0, seed=1)
        self.assertEqual(inst.n, 0)
        self.assertEqual(inst.formula.num_clauses, 7)
        self.assertEqual(inst.tree_formula.num_clauses, 6)
        self.assertEqual(inst.incoming_clause.to_dimacs(), [5, 6, 3])
        self.assertEqual(inst.forced, [Literal(3), Literal(7)])

    def test_deterministic(self):
        first = construct_family(3, seed=2)
        second = construct_family(3, seed=2)
        self.assertEqual(first.formula, second.formula)
        self.assertEqual(first.filler_kinds, second.filler_kinds)
        self.assertEqual(len(first.filler_kinds), 3)
        for kind in first.filler_kinds:
            self.assertTrue(kind in FillerKind.ALL)

    def test_negative(self):
        with self.assertRaises(ValueError):
            construct_family(-1)

    def test_padding_keeps_schema(self):
        inst = construct_family(4, seed=3)
        self.assertEqual(inst.formula.num_clauses, 11)
        self.assertEqual(inst.formula.clauses[0].to_dimacs(), [1, 2, -3])
        self.assertEqual(inst.formula.clauses[-2].to_dimacs(), [-1, -2, 4])
        self.assertTrue(verify_assumptions(inst).passed)

    def test_search_exhausted(self):
        with self.assertRaises(FamilySearchError):
            construct_family(1, seed=1, attempts=0)

class TestAssumptions(TestCase):

    def test_golden(self):
        inst = load_family(DimacsFile(GOLDEN).read())
        report = verify_assumptions(inst)
        self.assertTrue(report.passed)
        self.assertEqual(report.failures(), [])
        self.assertTrue(all(report.to_dict().values()))

    def test_duplicated_filler(self):
        f = DimacsFile(GOLDEN).read()
        clauses = list(f.clauses)
        clauses.insert(5, clauses[2])
        inst = load_family(f.with_clauses(clauses))
        self.assertEqual(inst.n, 1)
        self.assertTrue(verify_assumptions(inst).passed)

    def test_fresh_padding(self):
        f = DimacsFile(GOLDEN).read()
        x = Literal(8)
        clauses = list(f.clauses)
        clauses.insert(5, Clause([x, x, x]))
        names = f.names
        names[8] = 'f1'
        inst = load_family(Formula(clauses, 8, names))
        self.assertTrue(verify_assumptions(inst).passed)

    def test_example_formula(self):
        f = DimacsFile('test/data/example.cnf').read()
        roles = {'a': 1, 'b': 2, 'c': 3}
        report = verify_assumptions(FamilyInstance(f, roles, 0))
        self.assertFalse(report.passed)
        self.assertFalse(report.schema)
        with self.assertRaises(ValueError):
            load_family(f)

    def test_missing_closing_clause(self):
        f = DimacsFile(GOLDEN).read()
        clauses = list(f.clauses)
        del clauses[5]
        inst = FamilyInstance(f.with_clauses(clauses), load_family(f).role_map, 0)
        report = verify_assumptions(inst)
        self.assertFalse(report.schema)
        self.assertTrue('schema' in report.failures())

    def test_alpha_compatible_with_a(self):
        # without (~a | ~a | ~a) the literal a reaches a long path next to alpha
        f = DimacsFile(GOLDEN).read()
        clauses = list(f.clauses)
        del clauses[3]
        inst = FamilyInstance(f.with_clauses(clauses), load_family(f).role_map, 0)
        report = verify_assumptions(inst)
        self.assertTrue(report.schema)
        self.assertFalse(report.a_alpha_pair)
        self.assertTrue(report.b_alpha_pair)

class TestDivergence(TestCase):

    def test_golden(self):
        inst = load_family(DimacsFile(GOLDEN).read())
        report = reproduce_divergence(inst, instance=GOLDEN)
        self.assertEqual(report.oracle_verdict, Verdict.SATISFIABLE)
        self.assertEqual(report.algorithm_verdict, Verdict.UNSATISFIABLE)
        self.assertEqual(report.witness.to_dimacs(), [-1, 2, 3, -4, -5, -6, 7])
        self.assertEqual(report.derived_pair, (Literal(3), Literal(7)))

    def test_trace(self):
        inst = load_family(DimacsFile(GOLDEN).read())
        doc = reproduce_divergence(inst, instance=GOLDEN).to_dict()
        self.assertEqual(doc['schema_version'], 1)
        self.assertEqual(doc['derived_pair'], ['c', 'alpha'])
        events = [e['event'] for e in doc['trace']]
        self.assertEqual(events[0], 'useful_units')
        self.assertEqual(events[-1], 'verdict')
        useful = doc['trace'][0]['useful']
        self.assertEqual(useful['~s@5.0'], ['t'])
        self.assertEqual(useful['~t@5.1'], ['s'])
        self.assertEqual(useful['alpha@2.0'], ['s', 't'])
        step3 = [e for e in doc['trace'] if e['event'] == 'step3' and e['round'] == 0]
        self.assertEqual(step3[0]['before']['alpha@2.0'], ['s', 't'])
        self.assertEqual(step3[-1]['after']['alpha@2.0'], [])
        deleted = [e for e in doc['trace'] if e['event'] == 'delete'][0]['units']
        self.assertTrue('alpha@2.0' in deleted)
        json.dumps(doc)

    def test_ablation(self):
        inst = load_family(DimacsFile(GOLDEN).read())
        with self.assertRaises(NoDivergenceError):
            reproduce_divergence(inst, Step3Mode.OFF)
        witness, result = compare_destroyed(inst, Step3Mode.OFF)
        self.assertTrue(result.satisfiable)
        self.assertIsNotNone(witness)

    def test_family_members(self):
        for n in range(0, 6):
            for seed in [1, 2, 3]:
                inst = construct_family(n, seed)
                report = reproduce_divergence(inst)
                self.assertEqual(report.algorithm_verdict, Verdict.UNSATISFIABLE)
                self.assertTrue(report.witness[3] and report.witness[7])
                self.assertTrue(evaluate(inst.tree_formula, report.witness))
                with self.assertRaises(NoDivergenceError):
                    reproduce_divergence(inst, Step3Mode.OFF)

    def test_single_pass(self):
        inst = construct_family(2, seed=1)
        report = reproduce_divergence(inst, Step3Mode.SINGLE)
        self.assertEqual(report.step3_mode, Step3Mode.SINGLE)

    def test_random_formulas(self):
        # outside the family divergences are recorded, not asserted
        rng = np.random.RandomState(7)
        divergences = 0
        for _ in range(20):
            f = random_formula(5, 6, rng)
            self.assertEqual(f.num_clauses, 6)
            self.assertTrue(all(len(c) == 3 for c in f.clauses))
            satisfiable = brute_force_sat(f) is not None
            if decide(f, PairEngine.ORACLE) == Verdict.UNSATISFIABLE:
                self.assertFalse(satisfiable, msg=repr(f))
            verdict = decide(f, PairEngine.RECONSTRUCTED)
            self.assertTrue(verdict in [Verdict.SATISFIABLE, Verdict.UNSATISFIABLE])
            if (verdict == Verdict.SATISFIABLE) != satisfiable:
                divergences += 1
        logging.info('Random 3-CNF: %d of 20 formulas diverge' %(divergences))
        self.assertTrue(0 <= divergences <= 20)

class TestReportFile(TestCase):

    def setUp(self):
        self.dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.dir)

    def test_write_read(self):
        inst = load_family(DimacsFile(GOLDEN).read())
        report = reproduce_divergence(inst, instance=GOLDEN)
        path = os.path.join(self.dir, 'report.json')
        ReportFile(path).write([report], [GOLDEN], Step3Mode.FIXPOINT)
        doc = ReportFile(path).read()
        self.assertEqual(doc['inputs'], [GOLDEN])
        self.assertEqual(len(doc['divergences']), 1)
        self.assertEqual(doc['divergences'][0]['algorithm_verdict'], Verdict.UNSATISFIABLE)

    def test_extension(self):
        with self.assertRaises(ValueError):
            ReportFile('report.txt')
