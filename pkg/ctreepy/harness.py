"""
Command line front end: solve DIMACS files, compare the oracle with the
reconstructed procedure and generate counterexample family files
Author: ctreepy developers
"""
import argparse
import json
import logging
import os
import sys

import yaml

from .cnf import Clause, DimacsError, MissingVariableError
from .checking_tree import (PairEngine, Step3Mode, Verdict, algorithm1,
                            build_standard_tree, decide, destroy)
from .counterexample import (SCHEMA_VERSION, DivergenceReport, FamilySearchError,
                             NoDivergenceError, compare_destroyed, construct_family,
                             has_family_roles, load_family, render_trace)
from .dimacs_file import DimacsFile
from .oracle import BoundExceededError, brute_force_sat
from .report_file import ReportFile

EXIT_CLEAN = 0
EXIT_ERROR = 1
EXIT_SATISFIABLE = 10
EXIT_UNSATISFIABLE = 20
EXIT_DIVERGENCE = 30

ENV_MAX_VARIABLES = 'CTREEPY_MAX_VARIABLES'
ENV_PATH_BOUND = 'CTREEPY_PATH_BOUND'

class Engine(object):
    """Engines selectable on the command line. """
    ORACLE = 'oracle'
    RECONSTRUCTED = 'reconstructed'
    BOTH = 'both'
    ALL = [ORACLE, RECONSTRUCTED, BOTH]

class OutputFormat(object):
    TEXT = 'text'
    JSON = 'json'
    ALL = [TEXT, JSON]

DEFAULTS = {
    'engine': Engine.ORACLE,
    'max_variables': 32,
    'path_bound': 2**24,
    'step3': Step3Mode.FIXPOINT,
    'format': OutputFormat.TEXT,
    'seed': 1,
    'n': 0,
    'count': 1,
    'family_attempts': 64,
    'out': '.',
}

class RunConfig(object):
    """Settings of one command run.

    Values come from `DEFAULTS`, then a YAML file, then the environment,
    then explicit overrides such as command line flags.

    Attributes
    ----------
    inputs : :obj:`list` of str
        Input DIMACS paths.
    forced : :obj:`list` of str
        Literals forced true by `solve`, as names or signed integers.
    report : str
        Optional JSON report path for `compare`.
    """
    def __init__(self, inputs=None, forced=None, report=None, **values):
        self.inputs = list(inputs) if inputs is not None else []
        self.forced = list(forced) if forced is not None else []
        self.report = report
        self.values_ = dict(DEFAULTS)
        for key, value in values.items():
            if key not in DEFAULTS:
                raise ValueError('Unknown configuration key %s' %(key))
            self.values_[key] = value
        self.validate()

    @staticmethod
    def load(config_filename=None, environ=None, inputs=None, forced=None, report=None, **overrides):
        """Builds a config from a YAML file, the environment and overrides.

        Overrides equal to None are ignored.

        Raises
        ------
        ValueError
            If a value is unknown or out of range.
        """
        values = {}
        if config_filename is not None:
            with open(config_filename, 'r') as f:
                data = yaml.safe_load(f)
            if data is not None:
                if not isinstance(data, dict):
                    raise ValueError('Config file %s must hold a mapping' %(config_filename))
                values.update(data)
            logging.debug('Loaded config %s' %(config_filename))
        if environ is None:
            environ = os.environ
        for key, var in [('max_variables', ENV_MAX_VARIABLES), ('path_bound', ENV_PATH_BOUND)]:
            if var in environ:
                try:
                    values[key] = int(environ[var])
                except ValueError:
                    raise ValueError('%s must be an integer, got %s' %(var, environ[var]))
        for key, value in overrides.items():
            if value is not None:
                values[key] = value
        return RunConfig(inputs, forced, report, **values)

    def validate(self):
        """Checks bounds and enumeration values.

        Raises
        ------
        ValueError
            If a bound is not positive or a value is unknown.
        """
        for key in ['max_variables', 'path_bound', 'count', 'family_attempts']:
            if int(self.values_[key]) <= 0:
                raise ValueError('%s must be positive, got %s' %(key, self.values_[key]))
        if int(self.values_['n']) < 0:
            raise ValueError('n must be non-negative, got %s' %(self.values_['n']))
        if self.values_['engine'] not in Engine.ALL:
            raise ValueError('Engine %s not supported' %(self.values_['engine']))
        if self.values_['step3'] not in Step3Mode.ALL:
            raise ValueError('Step 3 mode %s not supported' %(self.values_['step3']))
        if self.values_['format'] not in OutputFormat.ALL:
            raise ValueError('Output format %s not supported' %(self.values_['format']))

    def __getitem__(self, key):
        return self.values_[key]

    def keys(self):
        return self.values_.keys()

def _write_witness(stream, formula, witness):
    stream.write('v %s 0\n' %(' '.join([str(v) for v in witness.to_dimacs()])))
    if len(formula.names) > 0:
        values = witness.values
        stream.write('c witness %s\n' %(' '.join(
            ['%s=%s' %(formula.name_of(v), 'T' if values[v] else 'F') for v in sorted(values.keys())])))

def cmd_solve(config, stream=None):
    """Solves one DIMACS file with the configured engine.

    The oracle solves the formula plus a unit clause per forced literal.
    Without forced literals the reconstructed engine runs the full
    procedure; with them it destroys the oracle-built standard tree by the
    forced set and runs Algorithm 1.

    Returns
    -------
    int
        10 for satisfiable, 20 for unsatisfiable.
    """
    if stream is None:
        stream = sys.stdout
    if len(config.inputs) != 1:
        raise ValueError('solve takes exactly one input file, got %d' %(len(config.inputs)))
    if config['engine'] == Engine.BOTH:
        raise ValueError('solve runs a single engine, use compare for both')
    path = config.inputs[0]
    formula = DimacsFile(path).read()
    forced = [formula.parse_literal(str(tok)) for tok in config.forced]

    witness = None
    reason = None
    trace = []
    if config['engine'] == Engine.ORACLE:
        target = formula.with_clauses(list(formula.clauses) + [Clause([l]) for l in forced])
        witness = brute_force_sat(target, config['max_variables'])
        verdict = Verdict.SATISFIABLE if witness is not None else Verdict.UNSATISFIABLE
    elif len(forced) > 0:
        std = build_standard_tree(formula, PairEngine.ORACLE, config['step3'], config['path_bound'])
        result = algorithm1(destroy(std, forced), config['step3'])
        verdict = result.verdict
        reason = result.reason
        trace = result.trace
    else:
        verdict = decide(formula, PairEngine.RECONSTRUCTED, config['step3'], config['path_bound'])
    logging.info('%s: %s by %s engine' %(path, verdict, config['engine']))

    if config['format'] == OutputFormat.JSON:
        doc = {
            'schema_version': SCHEMA_VERSION,
            'instance': path,
            'engine': config['engine'],
            'step3_mode': config['step3'],
            'forced': [formula.format_literal(l) for l in forced],
            'verdict': verdict,
            'witness': witness.to_dimacs() if witness is not None else None,
            'reason': reason,
            'trace': render_trace(trace, formula),
        }
        json.dump(doc, stream, indent=2, sort_keys=True)
        stream.write('\n')
    else:
        if verdict == Verdict.SATISFIABLE:
            stream.write('s SATISFIABLE\n')
        else:
            stream.write('s UNSATISFIABLE\n')
        if witness is not None:
            _write_witness(stream, formula, witness)
        if reason is not None:
            stream.write('c reason: %s\n' %(reason))

    if verdict == Verdict.SATISFIABLE:
        return EXIT_SATISFIABLE
    return EXIT_UNSATISFIABLE

def compare_inputs(config):
    """Runs the oracle and the reconstructed procedure on every input.

    Files carrying the family role names compare the tree destroyed by
    {c, alpha}; other files compare full-formula verdicts.

    Returns
    -------
    :obj:`list` of :obj:`DivergenceReport`
        One report per disagreement, in input order.
    """
    reports = []
    step3 = config['step3']
    for path in config.inputs:
        formula = DimacsFile(path).read()
        if has_family_roles(formula):
            inst = load_family(formula)
            witness, result = compare_destroyed(inst, step3, config['path_bound'], config['max_variables'])
            oracle_sat = witness is not None
            if oracle_sat != result.satisfiable:
                reports.append(DivergenceReport(path, Verdict.SATISFIABLE if oracle_sat else Verdict.UNSATISFIABLE,
                                                witness, result.verdict, derived_pair=tuple(inst.forced),
                                                trace=result.trace, formula=formula, step3_mode=step3,
                                                reason=result.reason))
        else:
            witness = brute_force_sat(formula, config['max_variables'])
            oracle_verdict = Verdict.SATISFIABLE if witness is not None else Verdict.UNSATISFIABLE
            verdict = decide(formula, PairEngine.RECONSTRUCTED, step3, config['path_bound'])
            if verdict != oracle_verdict:
                reports.append(DivergenceReport(path, oracle_verdict, witness, verdict,
                                                formula=formula, step3_mode=step3))
        if len(reports) > 0 and reports[-1].instance == path:
            logging.info('Divergence found on %s' %(path))
    return reports

def cmd_compare(config, stream=None):
    """Compares both engines on every input and prints the divergences.

    Returns
    -------
    int
        30 if any divergence was found, 0 otherwise.
    """
    if stream is None:
        stream = sys.stdout
    if config['engine'] != Engine.BOTH:
        raise ValueError('compare requires engine %s, got %s' %(Engine.BOTH, config['engine']))
    reports = compare_inputs(config)

    if config['format'] == OutputFormat.JSON:
        doc = {
            'schema_version': SCHEMA_VERSION,
            'inputs': list(config.inputs),
            'step3_mode': config['step3'],
            'divergences': [r.to_dict() for r in reports],
        }
        json.dump(doc, stream, indent=2, sort_keys=True)
        stream.write('\n')
    else:
        for r in reports:
            stream.write(r.to_text() + '\n')
        stream.write('c %d inputs, %d divergences\n' %(len(config.inputs), len(reports)))
    if config.report is not None:
        ReportFile(config.report).write(reports, config.inputs, config['step3'])

    if len(reports) > 0:
        return EXIT_DIVERGENCE
    return EXIT_CLEAN

def generate_files(config):
    """Writes family members for seeds seed .. seed+count-1.

    Returns
    -------
    :obj:`list` of str
        The written paths.
    """
    out = config['out']
    if not os.path.exists(out):
        os.makedirs(out)
    paths = []
    for seed in range(int(config['seed']), int(config['seed']) + int(config['count'])):
        inst = construct_family(int(config['n']), seed, int(config['family_attempts']), config['path_bound'])
        path = os.path.join(out, 'family_n%d_seed%d.cnf' %(inst.n, seed))
        DimacsFile(path).write(inst.formula, inst.comments)
        paths.append(path)
    return paths

def cmd_generate(config, stream=None):
    """Generates family files and lists their paths.

    Returns
    -------
    int
        0 on success.
    """
    if stream is None:
        stream = sys.stdout
    for path in generate_files(config):
        stream.write('%s\n' %(path))
    return EXIT_CLEAN

def _add_common(parser):
    parser.add_argument('--config', type=str, default=None, help='YAML config file')
    parser.add_argument('--verbose', action='store_true', help='log debug messages')
    parser.add_argument('--step3', type=str, default=None, choices=Step3Mode.ALL,
                        help='Step 3 intersection mode')
    parser.add_argument('--bound', type=int, default=None, help='variable bound of the exhaustive oracle')
    parser.add_argument('--path-bound', type=int, default=None, help='bound on long path enumeration')
    parser.add_argument('--format', type=str, default=None, choices=OutputFormat.ALL, help='output format')

def build_parser():
    """Returns the argument parser with the solve, compare and generate commands. """
    parser = argparse.ArgumentParser(description='Refute the checking tree 3-SAT procedure against exact oracles')
    subparsers = parser.add_subparsers(dest='command')

    solve = subparsers.add_parser('solve', help='solve a DIMACS file')
    solve.add_argument('input', type=str, help='DIMACS .cnf file')
    solve.add_argument('--engine', type=str, default=None, choices=[Engine.ORACLE, Engine.RECONSTRUCTED],
                       help='engine deciding the formula')
    solve.add_argument('--force', type=str, action='append', default=[],
                       help='literal forced true, by name or signed integer')
    _add_common(solve)

    compare = subparsers.add_parser('compare', help='compare both engines')
    compare.add_argument('inputs', type=str, nargs='*', help='DIMACS .cnf files')
    compare.add_argument('--report', type=str, default=None, help='JSON report file to write')
    _add_common(compare)

    generate = subparsers.add_parser('generate', help='generate counterexample family files')
    generate.add_argument('--n', type=int, default=None, help='number of padding clauses')
    generate.add_argument('--seed', type=int, default=None, help='first seed')
    generate.add_argument('--count', type=int, default=None, help='number of seeds')
    generate.add_argument('--out', type=str, default=None, help='output directory')
    generate.add_argument('--attempts', type=int, default=None, help='search attempts per padding clause')
    _add_common(generate)
    return parser

def main(argv=None, stream=None, environ=None):
    """Runs a command and returns its exit status. """
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return EXIT_ERROR

    logging.getLogger().setLevel(logging.DEBUG if args.verbose else logging.INFO)
    overrides = {
        'step3': args.step3,
        'max_variables': args.bound,
        'path_bound': args.path_bound,
        'format': args.format,
    }
    try:
        if args.command == 'solve':
            overrides['engine'] = args.engine
            config = RunConfig.load(args.config, environ, inputs=[args.input], forced=args.force, **overrides)
            return cmd_solve(config, stream)
        if args.command == 'compare':
            overrides['engine'] = Engine.BOTH
            config = RunConfig.load(args.config, environ, inputs=args.inputs, report=args.report, **overrides)
            return cmd_compare(config, stream)
        overrides.update({'n': args.n, 'seed': args.seed, 'count': args.count,
                          'out': args.out, 'family_attempts': args.attempts})
        config = RunConfig.load(args.config, environ, **overrides)
        return cmd_generate(config, stream)
    except (DimacsError, MissingVariableError, BoundExceededError, FamilySearchError,
            NoDivergenceError, ValueError, KeyError, IOError) as e:
        logging.error('%s failed: %s' %(args.command, e))
        return EXIT_ERROR

if __name__ == '__main__':
    sys.exit(main())
