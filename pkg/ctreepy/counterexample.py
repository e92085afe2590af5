"""
Generator and verifier for the family of 3-CNF instances on which the
reconstructed procedure calls a satisfiable destroyed tree unsatisfiable
Author: ctreepy developers
"""
import logging

import numpy as np

from .cnf import Clause, Formula, Literal, evaluate, negate
from .checking_tree import (PairEngine, Step3Mode, Verdict, algorithm1,
                            build_standard_tree, destroy, direct_pairs,
                            residual_formula, CheckingTree)
from .oracle import (DEFAULT_MAX_VARIABLES, DEFAULT_PATH_BOUND, brute_force_sat,
                     distinct_long_paths, indirect_pairs_oracle)

ROLES = ['s', 't', 'c', 'r', 'a', 'b', 'alpha']
FORCED_ROLES = ['c', 'alpha']
SCHEMA_VERSION = 1
DEFAULT_FAMILY_ATTEMPTS = 64

class FillerKind(object):
    """Kinds of padding clause tried by the family search. """
    DUPLICATE = 'duplicate'
    FRESH_UNIT = 'fresh_unit'
    FRESH_TAUTOLOGY = 'fresh_tautology'
    RANDOM = 'random'
    ALL = [DUPLICATE, FRESH_UNIT, FRESH_TAUTOLOGY, RANDOM]

class FamilySearchError(RuntimeError):
    """ Raised when the family search runs out of attempts. """
    pass

class NoDivergenceError(RuntimeError):
    """ Raised when the oracle and Algorithm 1 agree on a family instance. """
    pass

class FamilyInstance(object):
    """One member of the counterexample family.

    The formula's clauses are the tree clauses (s | t | ~c), the fixed
    forcing gadget, n padding clauses and (~s | ~t | r), followed by the
    incoming clause (a | b | c).

    Attributes
    ----------
    formula : :obj:`Formula`
        The full formula, incoming clause last, with role names.
    role_map : :obj:`dict` mapping str to int
        Variable of each role in `ROLES`.
    n : int
        Number of padding clauses.
    seed : int
        Seed of the search, None for loaded instances.
    filler_kinds : :obj:`list` of str
        The `FillerKind` of each padding clause.
    """
    def __init__(self, formula, role_map, n, seed=None, filler_kinds=None):
        self.formula_ = formula
        self.role_map_ = dict(role_map)
        self.n_ = n
        self.seed_ = seed
        self.filler_kinds_ = list(filler_kinds) if filler_kinds is not None else []

    @property
    def formula(self):
        return self.formula_

    @property
    def role_map(self):
        return dict(self.role_map_)

    @property
    def n(self):
        return self.n_

    @property
    def seed(self):
        return self.seed_

    @property
    def filler_kinds(self):
        return list(self.filler_kinds_)

    @property
    def tree_formula(self):
        """:obj:`Formula` : The formula without its incoming clause. """
        return self.formula_.with_clauses(self.formula_.clauses[:-1])

    @property
    def incoming_clause(self):
        """:obj:`Clause` : The last clause, added after the tree. """
        return self.formula_.clauses[-1]

    def literal(self, role, polarity=True):
        """Returns the literal of a role. """
        return Literal(self.role_map_[role], polarity)

    @property
    def forced(self):
        """:obj:`list` of :obj:`Literal` : The destruction set {c, alpha}. """
        return [self.literal(r) for r in FORCED_ROLES]

    @property
    def comments(self):
        """:obj:`list` of str : DIMACS comment lines describing the instance. """
        m = self.formula_.num_clauses
        lines = ['family n=%d seed=%s' %(self.n_, self.seed_),
                 'tree clauses 1-%d, incoming clause %d' %(m - 1, m),
                 'forcing set: %s' %(' '.join(FORCED_ROLES)),
                 'fillers avoid ~c and ~alpha']
        for i, kind in enumerate(self.filler_kinds_):
            lines.append('filler %d: %s' %(i + 1, kind))
        return lines

class AssumptionReport(object):
    """Outcome of each family assumption, all computed by the oracle.

    Attributes
    ----------
    schema : bool
        Roles present, tree starts with (s | t | ~c), ends with
        (~s | ~t | r) and the incoming clause is (a | b | c).
    a_alpha_pair : bool
        {a, alpha} is a contradiction pair of the tree.
    b_alpha_pair : bool
        {b, alpha} is a contradiction pair of the tree.
    paths_contain_c_alpha : bool
        Every long path holds c and alpha.
    s_tbar_compatible : bool
        {s, ~t} is not a contradiction pair.
    t_sbar_compatible : bool
        {t, ~s} is not a contradiction pair.
    long_path_exists : bool
        The tree has a long path.
    """
    CHECKS = ['schema', 'a_alpha_pair', 'b_alpha_pair', 'paths_contain_c_alpha',
              's_tbar_compatible', 't_sbar_compatible', 'long_path_exists']

    def __init__(self, schema=False, a_alpha_pair=False, b_alpha_pair=False,
                 paths_contain_c_alpha=False, s_tbar_compatible=False,
                 t_sbar_compatible=False, long_path_exists=False):
        self.schema = schema
        self.a_alpha_pair = a_alpha_pair
        self.b_alpha_pair = b_alpha_pair
        self.paths_contain_c_alpha = paths_contain_c_alpha
        self.s_tbar_compatible = s_tbar_compatible
        self.t_sbar_compatible = t_sbar_compatible
        self.long_path_exists = long_path_exists

    @property
    def passed(self):
        """bool : True if every check holds. """
        return len(self.failures()) == 0

    def failures(self):
        """Returns the names of the failed checks. """
        return [c for c in AssumptionReport.CHECKS if not getattr(self, c)]

    def to_dict(self):
        return dict((c, bool(getattr(self, c))) for c in AssumptionReport.CHECKS)

class DivergenceReport(object):
    """A disagreement between the oracle and the reconstructed procedure.

    Attributes
    ----------
    instance : str
        Identity of the instance, usually its file path.
    oracle_verdict : str
        The exact `Verdict`.
    witness : :obj:`Assignment`
        The oracle's satisfying assignment, None when unsatisfiable.
    algorithm_verdict : str
        The reconstructed procedure's `Verdict`.
    derived_pair : :obj:`tuple` of :obj:`Literal`
        The pair wrongly derived, None for full-formula comparisons.
    trace : :obj:`list` of :obj:`dict`
        The Algorithm 1 trace, empty for full-formula comparisons.
    formula : :obj:`Formula`
        Names used to render literals.
    step3_mode : str
        The `Step3Mode` in use.
    reason : str
        Algorithm 1's stated reason, if any.
    """
    def __init__(self, instance, oracle_verdict, witness, algorithm_verdict,
                 derived_pair=None, trace=None, formula=None,
                 step3_mode=Step3Mode.FIXPOINT, reason=None):
        self.instance = instance
        self.oracle_verdict = oracle_verdict
        self.witness = witness
        self.algorithm_verdict = algorithm_verdict
        self.derived_pair = derived_pair
        self.trace = trace if trace is not None else []
        self.formula = formula
        self.step3_mode = step3_mode
        self.reason = reason

    def _name(self, literal):
        if self.formula is None:
            return str(literal.to_dimacs())
        return self.formula.format_literal(literal)

    def to_dict(self):
        """Returns the report as a JSON-ready dictionary. """
        witness = None
        if self.witness is not None:
            witness = self.witness.to_dimacs()
        pair = None
        if self.derived_pair is not None:
            pair = [self._name(l) for l in self.derived_pair]
        return {
            'schema_version': SCHEMA_VERSION,
            'instance': self.instance,
            'oracle_verdict': self.oracle_verdict,
            'witness': witness,
            'algorithm_verdict': self.algorithm_verdict,
            'derived_pair': pair,
            'step3_mode': self.step3_mode,
            'reason': self.reason,
            'trace': render_trace(self.trace, self.formula),
        }

    def to_text(self):
        """Returns a short human readable summary. """
        lines = ['divergence on %s' %(self.instance),
                 '  oracle:        %s' %(self.oracle_verdict),
                 '  reconstructed: %s (step3=%s)' %(self.algorithm_verdict, self.step3_mode)]
        if self.reason is not None:
            lines.append('  reason:        %s' %(self.reason))
        if self.derived_pair is not None:
            lines.append('  derived pair:  {%s}' %(', '.join([self._name(l) for l in self.derived_pair])))
        if self.witness is not None:
            values = self.witness.values
            lines.append('  witness:       %s' %(' '.join(
                ['%s=%s' %(self._name(Literal(v)), 'T' if values[v] else 'F') for v in sorted(values.keys())])))
        return '\n'.join(lines)

def _unit_label(key, literal, formula):
    name = formula.format_literal(literal) if formula is not None else str(literal.to_dimacs())
    return '%s@%d.%d' %(name, key[0], key[1])

def _render_sets(sets, d_units, formula):
    rendered = {}
    for key in sorted(sets.keys()):
        literals = sorted(sets[key])
        if formula is not None:
            rendered[_unit_label(key, d_units[key], formula)] = [formula.format_literal(l) for l in literals]
        else:
            rendered[_unit_label(key, d_units[key], None)] = [l.to_dimacs() for l in literals]
    return rendered

def render_trace(trace, formula=None, units=None):
    """Renders an Algorithm 1 trace with readable unit labels such as `alpha@2.0`.

    Parameters
    ----------
    trace : :obj:`list` of :obj:`dict`
        Events from `Algorithm1Result.trace`.
    formula : :obj:`Formula`
        Supplies variable names.
    units : :obj:`dict`
        (layer, position) to literal map; recovered from a `units` event
        when omitted.

    Returns
    -------
    :obj:`list` of :obj:`dict`
        JSON-ready events.
    """
    if units is None:
        units = {}
        for event in trace:
            if event['event'] == 'units':
                units = event['units']
    rendered = []
    for event in trace:
        kind = event['event']
        if kind == 'units':
            continue
        if kind == 'useful_units':
            rendered.append({'event': kind, 'useful': _render_sets(event['useful'], units, formula)})
        elif kind == 'step3':
            rendered.append({'event': kind, 'round': event['round'], 'pass': event['pass'],
                             'before': _render_sets(event['before'], units, formula),
                             'after': _render_sets(event['after'], units, formula)})
        elif kind == 'delete':
            rendered.append({'event': kind, 'round': event['round'],
                             'units': [_unit_label(x, units[x], formula) for x in event['units']]})
        else:
            rendered.append(dict(event))
    return rendered

##################################################################
# Construction
##################################################################

def _gadget(roles):
    def lit(role, polarity=True):
        return Literal(roles[role], polarity)
    head = Clause([lit('s'), lit('t'), lit('c', False)])
    forcing = [Clause([lit('a'), lit('b'), lit('c')]),
               Clause([lit('alpha')] * 3),
               Clause([lit('a', False)] * 3),
               Clause([lit('b', False)] * 3)]
    closing = Clause([lit('s', False), lit('t', False), lit('r')])
    incoming = Clause([lit('a'), lit('b'), lit('c')])
    return head, forcing, closing, incoming

def _assemble(roles, fillers, num_variables, names, n, seed, kinds):
    head, forcing, closing, incoming = _gadget(roles)
    clauses = [head] + forcing + list(fillers) + [closing, incoming]
    formula = Formula(clauses, num_variables, names)
    return FamilyInstance(formula, roles, n, seed, kinds)

def _candidate_filler(rng, pool, roles, num_variables):
    """Draws one padding clause; returns (clause, kind, fresh variable or None). """
    kind = FillerKind.ALL[rng.randint(len(FillerKind.ALL))]
    if kind == FillerKind.DUPLICATE:
        return pool[rng.randint(len(pool))], kind, None
    if kind == FillerKind.FRESH_UNIT:
        f = Literal(num_variables + 1)
        return Clause([f, f, f]), kind, num_variables + 1
    if kind == FillerKind.FRESH_TAUTOLOGY:
        f = Literal(num_variables + 1)
        return Clause([f, negate(f), f]), kind, num_variables + 1

    banned = set([Literal(roles['c'], False), Literal(roles['alpha'], False)])
    literals = []
    for _ in range(3):
        l = Literal(int(rng.randint(1, num_variables + 1)), bool(rng.randint(2)))
        if l in banned:
            l = negate(l)
        literals.append(l)
    return Clause(literals), kind, None

def construct_family(n, seed=1, attempts=DEFAULT_FAMILY_ATTEMPTS, bound=DEFAULT_PATH_BOUND):
    """Builds a family member with n padding clauses by seeded search.

    Padding candidates are duplicates of earlier tree clauses, fresh
    (f | f | f) units, fresh (f | ~f | f) tautologies, or random clauses
    over existing variables that avoid ~c and ~alpha. Each candidate is
    kept only if the assumptions still hold.

    Parameters
    ----------
    n : int
        Number of padding clauses, 0 for the minimal member.
    seed : int
        Seed for `numpy.random.RandomState`.
    attempts : int
        Candidates tried per padding clause.
    bound : int
        Long path enumeration bound.

    Returns
    -------
    :obj:`FamilyInstance`
        The verified instance; equal (n, seed) give equal instances.

    Raises
    ------
    ValueError
        If n is negative.
    FamilySearchError
        If a padding clause cannot be found within the attempts.
    """
    if n < 0:
        raise ValueError('Family parameter n must be non-negative, got %d' %(n))
    rng = np.random.RandomState(seed)
    roles = dict((role, i + 1) for i, role in enumerate(ROLES))
    names = dict((v, r) for r, v in roles.items())
    num_vars = len(ROLES)
    head, forcing, closing, _ = _gadget(roles)
    fillers = []
    kinds = []

    inst = _assemble(roles, fillers, num_vars, names, 0, seed, kinds)
    report = verify_assumptions(inst, bound)
    if not report.passed:
        raise FamilySearchError('Base gadget fails assumptions %s' %(report.failures()))

    for i in range(n):
        accepted = False
        failures = []
        for attempt in range(attempts):
            pool = [head] + forcing + [closing] + fillers
            clause, kind, fresh = _candidate_filler(rng, pool, roles, num_vars)
            cand_vars = num_vars
            cand_names = dict(names)
            if fresh is not None:
                cand_vars = fresh
                cand_names[fresh] = 'f%d' %(fresh - len(ROLES))
            candidate = _assemble(roles, fillers + [clause], cand_vars, cand_names, i + 1, seed, kinds + [kind])
            report = verify_assumptions(candidate, bound)
            if report.passed:
                fillers.append(clause)
                kinds.append(kind)
                num_vars = cand_vars
                names = cand_names
                accepted = True
                logging.debug('Filler %d accepted after %d attempts: %s %s' %(i + 1, attempt + 1, kind, clause.to_dimacs()))
                break
            failures = report.failures()
        if not accepted:
            raise FamilySearchError('No filler found for n=%d seed=%d at filler %d after %d attempts, last failing checks %s'
                                    %(n, seed, i + 1, attempts, failures))

    inst = _assemble(roles, fillers, num_vars, names, n, seed, kinds)
    logging.info('Constructed family member n=%d seed=%d with %d clauses' %(n, seed, inst.formula.num_clauses))
    return inst

def load_family(formula, seed=None):
    """Recovers a family instance from a formula whose names carry the roles.

    Raises
    ------
    ValueError
        If a role name is missing or the formula is too short.
    """
    roles = {}
    for role in ROLES:
        try:
            roles[role] = formula.variable_named(role)
        except KeyError:
            raise ValueError('Formula has no variable named %s' %(role))
    n = formula.num_clauses - 7
    if n < 0:
        raise ValueError('Family formulas hold at least 7 clauses, got %d' %(formula.num_clauses))
    return FamilyInstance(formula, roles, n, seed)

def has_family_roles(formula):
    """Returns True if every role name appears in the formula's name table. """
    names = set(formula.names.values())
    return all(role in names for role in ROLES)

##################################################################
# Verification
##################################################################

def _schema_holds(inst):
    if any(role not in inst.role_map for role in ROLES):
        return False
    clauses = inst.formula.clauses
    if len(clauses) < 3:
        return False
    head, _, closing, incoming = _gadget(inst.role_map)
    return clauses[0] == head and clauses[-2] == closing and clauses[-1] == incoming

def verify_assumptions(inst, bound=DEFAULT_PATH_BOUND):
    """Checks the family assumptions on the tree before the incoming clause.

    Pair memberships use `indirect_pairs_oracle` together with
    `direct_pairs`; path properties use full enumeration of distinct long
    paths. A failed schema check leaves every other check False.

    Returns
    -------
    :obj:`AssumptionReport`
        The outcome of each check.

    Raises
    ------
    BoundExceededError
        If enumeration exceeds the bound.
    """
    if not _schema_holds(inst):
        return AssumptionReport(schema=False)
    tree = CheckingTree.from_formula(inst.tree_formula)
    pairs = indirect_pairs_oracle(tree, bound).union(direct_pairs(tree))
    lit = inst.literal

    num_paths = 0
    contain = True
    for path in distinct_long_paths(tree, bound):
        num_paths += 1
        if lit('c') not in path or lit('alpha') not in path:
            contain = False
    report = AssumptionReport(schema=True,
                              a_alpha_pair=pairs.contains(lit('a'), lit('alpha')),
                              b_alpha_pair=pairs.contains(lit('b'), lit('alpha')),
                              paths_contain_c_alpha=contain,
                              s_tbar_compatible=not pairs.contains(lit('s'), lit('t', False)),
                              t_sbar_compatible=not pairs.contains(lit('t'), lit('s', False)),
                              long_path_exists=num_paths > 0)
    logging.debug('Assumptions for n=%d: %d paths, failures %s' %(inst.n, num_paths, report.failures()))
    return report

def compare_destroyed(inst, step3_mode=Step3Mode.FIXPOINT, bound=DEFAULT_PATH_BOUND,
                      max_variables=DEFAULT_MAX_VARIABLES):
    """Runs Algorithm 1 and the oracle on the tree destroyed by {c, alpha}.

    The tree is the oracle-built standard tree of the formula without its
    incoming clause.

    Returns
    -------
    :obj:`tuple`
        The oracle witness for the residual formula (None if unsatisfiable)
        and the :obj:`Algorithm1Result`.
    """
    std = build_standard_tree(inst.tree_formula, PairEngine.ORACLE, step3_mode, bound)
    d = destroy(std, inst.forced)
    result = algorithm1(d, step3_mode)
    witness = brute_force_sat(residual_formula(d, inst.formula.names), max_variables)
    return witness, result

def reproduce_divergence(inst, step3_mode=Step3Mode.FIXPOINT, bound=DEFAULT_PATH_BOUND,
                         max_variables=DEFAULT_MAX_VARIABLES, instance=None):
    """Reproduces the wrong unsatisfiable verdict on a family instance.

    Parameters
    ----------
    inst : :obj:`FamilyInstance`
        A verified instance.
    step3_mode : str
        A `Step3Mode` value.
    instance : str
        Identity recorded in the report; defaults to `family-n<n>-seed<seed>`.

    Returns
    -------
    :obj:`DivergenceReport`
        The report, with the witness checked by `evaluate`.

    Raises
    ------
    ValueError
        If the instance fails its assumptions.
    NoDivergenceError
        If the oracle and Algorithm 1 agree.
    """
    report = verify_assumptions(inst, bound)
    if not report.passed:
        raise ValueError('Instance fails assumptions %s' %(report.failures()))
    if instance is None:
        instance = 'family-n%d-seed%s' %(inst.n, inst.seed)

    witness, result = compare_destroyed(inst, step3_mode, bound, max_variables)
    if witness is None or result.satisfiable:
        raise NoDivergenceError('Oracle (%s) and Algorithm 1 (%s) agree on %s with step3=%s'
                                %('sat' if witness is not None else 'unsat', result.verdict, instance, step3_mode))

    residual = inst.tree_formula.with_clauses(list(inst.tree_formula.clauses) + [Clause([l]) for l in inst.forced])
    if not evaluate(residual, witness):
        raise RuntimeError('Oracle witness does not satisfy the residual formula of %s' %(instance))

    logging.info('Divergence on %s: %s' %(instance, result.reason))
    return DivergenceReport(instance, Verdict.SATISFIABLE, witness, result.verdict,
                            derived_pair=tuple(inst.forced), trace=result.trace,
                            formula=inst.formula, step3_mode=step3_mode, reason=result.reason)

def random_formula(num_variables, num_clauses, rng, width=3):
    """Draws a random CNF formula.

    Parameters
    ----------
    num_variables : int
        Variables to draw from.
    num_clauses : int
        Number of clauses.
    rng : :obj:`numpy.random.RandomState`
        The random stream.
    width : int
        Literals per clause; None draws each width from 1..3.

    Returns
    -------
    :obj:`Formula`
        The formula.
    """
    clauses = []
    for _ in range(num_clauses):
        w = width if width is not None else int(rng.randint(1, 4))
        variables = rng.randint(1, num_variables + 1, size=w)
        polarities = rng.randint(2, size=w)
        clauses.append(Clause([Literal(int(v), bool(p)) for v, p in zip(variables, polarities)]))
    return Formula(clauses, num_variables)
