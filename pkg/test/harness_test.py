import json
import os
import shutil
import tempfile
from io import StringIO
from unittest import TestCase

from ctreepy import DimacsFile, RunConfig, load_family, verify_assumptions
from ctreepy.harness import (EXIT_CLEAN, EXIT_DIVERGENCE, EXIT_ERROR, EXIT_SATISFIABLE,
                             EXIT_UNSATISFIABLE, Engine, cmd_compare, main)

GOLDEN = 'test/data/family_n0.cnf'
EXAMPLE = 'test/data/example.cnf'
CONTRADICTION = 'test/data/contradiction.cnf'

def run(argv):
    out = StringIO()
    status = main(argv, stream=out, environ={})
    return status, out.getvalue()

class TestRunConfig(TestCase):

    def setUp(self):
        self.dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.dir)

    def test_defaults(self):
        config = RunConfig()
        self.assertEqual(config['max_variables'], 32)
        self.assertEqual(config['path_bound'], 2**24)
        self.assertEqual(config['step3'], 'fixpoint')
        self.assertEqual(config['engine'], Engine.ORACLE)

    def test_invalid(self):
        with self.assertRaises(ValueError):
            RunConfig(max_variables=0)
        with self.assertRaises(ValueError):
            RunConfig(step3='twice')
        with self.assertRaises(ValueError):
            RunConfig(engine='dpll')
        with self.assertRaises(ValueError):
            RunConfig(colour='red')

    def test_precedence(self):
        path = os.path.join(self.dir, 'config.yaml')
        with open(path, 'w') as f:
            f.write('max_variables: 20\npath_bound: 100\nstep3: single\n')
        config = RunConfig.load(path, environ={})
        self.assertEqual(config['max_variables'], 20)
        self.assertEqual(config['step3'], 'single')

        config = RunConfig.load(path, environ={'CTREEPY_MAX_VARIABLES': '12'})
        self.assertEqual(config['max_variables'], 12)
        self.assertEqual(config['path_bound'], 100)

        config = RunConfig.load(path, environ={'CTREEPY_MAX_VARIABLES': '12'}, max_variables=8, step3=None)
        self.assertEqual(config['max_variables'], 8)
        self.assertEqual(config['step3'], 'single')

    def test_shipped_config(self):
        config = RunConfig.load('cfg/tools/refute.yaml', environ={})
        self.assertEqual(dict((k, config[k]) for k in config.keys()), dict((k, RunConfig()[k]) for k in config.keys()))

    def test_bad_environment(self):
        with self.assertRaises(ValueError):
            RunConfig.load(environ={'CTREEPY_PATH_BOUND': 'many'})

    def test_compare_needs_both(self):
        with self.assertRaises(ValueError):
            cmd_compare(RunConfig(inputs=[EXAMPLE]), StringIO())

class TestSolve(TestCase):

    def test_example(self):
        status, out = run(['solve', EXAMPLE])
        self.assertEqual(status, EXIT_SATISFIABLE)
        self.assertTrue('s SATISFIABLE' in out)
        self.assertTrue('v -1 -2 3 -4 0' in out)
        self.assertTrue('c witness a=F b=F c=T d=F' in out)

    def test_contradiction(self):
        for engine in ['oracle', 'reconstructed']:
            status, out = run(['solve', CONTRADICTION, '--engine', engine])
            self.assertEqual(status, EXIT_UNSATISFIABLE)
            self.assertTrue('s UNSATISFIABLE' in out)

    def test_family_forced(self):
        status, out = run(['solve', GOLDEN, '--engine', 'reconstructed', '--force', 'c', '--force', 'alpha'])
        self.assertEqual(status, EXIT_UNSATISFIABLE)
        status, out = run(['solve', GOLDEN, '--engine', 'oracle', '--force', 'c', '--force', '7'])
        self.assertEqual(status, EXIT_SATISFIABLE)

    def test_json(self):
        status, out = run(['solve', GOLDEN, '--engine', 'reconstructed', '--force', 'c', '--force', 'alpha',
                           '--format', 'json'])
        doc = json.loads(out)
        self.assertEqual(doc['verdict'], 'unsat')
        self.assertEqual(doc['forced'], ['c', 'alpha'])
        self.assertEqual(doc['schema_version'], 1)
        self.assertTrue(len(doc['trace']) > 0)

    def test_errors(self):
        status, _ = run(['solve', 'test/data/missing.cnf'])
        self.assertEqual(status, EXIT_ERROR)
        status, _ = run(['solve', EXAMPLE, '--bound', '2'])
        self.assertEqual(status, EXIT_ERROR)
        status, _ = run(['solve', EXAMPLE, '--force', 'alpha'])
        self.assertEqual(status, EXIT_ERROR)

class TestCompare(TestCase):

    def setUp(self):
        self.dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.dir)

    def test_golden(self):
        status, out = run(['compare', GOLDEN])
        self.assertEqual(status, EXIT_DIVERGENCE)
        self.assertTrue('divergence on %s' %(GOLDEN) in out)
        self.assertTrue('c 1 inputs, 1 divergences' in out)

    def test_json_report(self):
        path = os.path.join(self.dir, 'report.json')
        status, out = run(['compare', GOLDEN, EXAMPLE, '--format', 'json', '--report', path])
        self.assertEqual(status, EXIT_DIVERGENCE)
        doc = json.loads(out)
        self.assertEqual(len(doc['divergences']), 1)
        self.assertEqual(doc['divergences'][0]['instance'], GOLDEN)
        self.assertEqual(doc['divergences'][0]['witness'], [-1, 2, 3, -4, -5, -6, 7])
        with open(path) as f:
            self.assertEqual(json.load(f), doc)

    def test_agreement(self):
        status, out = run(['compare', EXAMPLE, CONTRADICTION])
        self.assertEqual(status, EXIT_CLEAN)
        self.assertTrue('c 2 inputs, 0 divergences' in out)

    def test_empty(self):
        status, out = run(['compare'])
        self.assertEqual(status, EXIT_CLEAN)
        self.assertTrue('c 0 inputs, 0 divergences' in out)

    def test_ablation(self):
        status, _ = run(['compare', GOLDEN, '--step3', 'off'])
        self.assertEqual(status, EXIT_CLEAN)
        status, _ = run(['compare', GOLDEN, '--step3', 'single'])
        self.assertEqual(status, EXIT_DIVERGENCE)

    def test_deterministic(self):
        first = run(['compare', GOLDEN, '--format', 'json'])
        second = run(['compare', GOLDEN, '--format', 'json'])
        self.assertEqual(first, second)

class TestGenerate(TestCase):

    def setUp(self):
        self.dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.dir)

    def test_golden(self):
        status, out = run(['generate', '--n', '0', '--seed', '1', '--out', self.dir])
        self.assertEqual(status, EXIT_CLEAN)
        path = os.path.join(self.dir, 'family_n0_seed1.cnf')
        self.assertEqual(out.strip(), path)
        with open(path) as f, open(GOLDEN) as g:
            self.assertEqual(f.read(), g.read())

    def test_idempotent(self):
        first = os.path.join(self.dir, 'first')
        second = os.path.join(self.dir, 'second')
        run(['generate', '--n', '3', '--seed', '2', '--out', first])
        run(['generate', '--n', '3', '--seed', '2', '--out', second])
        name = 'family_n3_seed2.cnf'
        with open(os.path.join(first, name)) as f, open(os.path.join(second, name)) as g:
            self.assertEqual(f.read(), g.read())

    def test_seeds(self):
        status, out = run(['generate', '--n', '2', '--seed', '1', '--count', '3', '--out', self.dir])
        self.assertEqual(status, EXIT_CLEAN)
        paths = out.split()
        self.assertEqual(len(paths), 3)
        for path in paths:
            inst = load_family(DimacsFile(path).read())
            self.assertEqual(inst.n, 2)
            self.assertTrue(verify_assumptions(inst).passed)

    def test_compare_generated_corpus(self):
        run(['generate', '--n', '0', '--seed', '1', '--count', '3', '--out', self.dir])
        run(['generate', '--n', '4', '--seed', '1', '--count', '3', '--out', self.dir])
        paths = sorted([os.path.join(self.dir, p) for p in os.listdir(self.dir)])
        status, out = run(['compare', '--format', 'json'] + paths)
        self.assertEqual(status, EXIT_DIVERGENCE)
        self.assertEqual(len(json.loads(out)['divergences']), 6)
        status, out = run(['compare', '--format', 'json', '--step3', 'off'] + paths)
        self.assertEqual(status, EXIT_CLEAN)

    def test_invalid_count(self):
        status, _ = run(['generate', '--count', '0', '--out', self.dir])
        self.assertEqual(status, EXIT_ERROR)
