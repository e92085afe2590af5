from .cnf import (Literal, Clause, Formula, Assignment, DimacsError, MissingVariableError,
                  negate, evaluate, parse_dimacs, serialize_dimacs)
from .dimacs_file import DimacsFile
from .oracle import (PairSet, LongPath, BoundExceededError, brute_force_sat, solve_2sat,
                     enumerate_long_paths, distinct_long_paths, indirect_pairs_oracle)
from .checking_tree import (Verdict, PairEngine, Step3Mode, Layer, CheckingTree,
                            StandardCheckingTree, DestroyedCheckingTree, Algorithm1Result,
                            direct_pairs, build_standard_tree, add_layer, destroy,
                            useful_units, step3_intersect, algorithm1, new_pair_check,
                            is_unsatisfiable_simplified, residual_formula, decide)
from .counterexample import (FamilyInstance, AssumptionReport, DivergenceReport,
                             FamilySearchError, NoDivergenceError, construct_family,
                             verify_assumptions, reproduce_divergence, compare_destroyed,
                             load_family, random_formula)
from .report_file import ReportFile
from .harness import RunConfig, Engine, OutputFormat, main

__all__ = ['Literal', 'Clause', 'Formula', 'Assignment',
           'DimacsError', 'MissingVariableError',
           'negate', 'evaluate', 'parse_dimacs', 'serialize_dimacs',
           'DimacsFile',
           'PairSet', 'LongPath', 'BoundExceededError',
           'brute_force_sat', 'solve_2sat',
           'enumerate_long_paths', 'distinct_long_paths', 'indirect_pairs_oracle',
           'Verdict', 'PairEngine', 'Step3Mode',
           'Layer', 'CheckingTree', 'StandardCheckingTree', 'DestroyedCheckingTree', 'Algorithm1Result',
           'direct_pairs', 'build_standard_tree', 'add_layer', 'destroy',
           'useful_units', 'step3_intersect', 'algorithm1', 'new_pair_check',
           'is_unsatisfiable_simplified', 'residual_formula', 'decide',
           'FamilyInstance', 'AssumptionReport', 'DivergenceReport',
           'FamilySearchError', 'NoDivergenceError',
           'construct_family', 'verify_assumptions', 'reproduce_divergence',
           'compare_destroyed', 'load_family', 'random_formula',
           'ReportFile',
           'RunConfig', 'Engine', 'OutputFormat', 'main'
       ]
