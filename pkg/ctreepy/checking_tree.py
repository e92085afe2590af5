"""
Checking trees, destroyed checking trees and the useful-unit procedure
("Algorithm 1") that derives contradiction pairs, including its Step 3
intersection rule
Author: ctreepy developers
"""
import logging

from .cnf import Clause, Formula, negate
from .oracle import (DEFAULT_PATH_BOUND, PairSet, cross_layer_candidates,
                     indirect_pairs_oracle, solve_2sat)

class Verdict(object):
    """Verdicts of a decider. """
    SATISFIABLE = 'sat'
    UNSATISFIABLE = 'unsat'

class PairEngine(object):
    """Sources of indirect contradiction pairs while a standard tree grows.

    ORACLE enumerates long paths; RECONSTRUCTED derives pairs with
    `new_pair_check`, the procedure under test.
    """
    ORACLE = 'oracle'
    RECONSTRUCTED = 'reconstructed'
    ALL = [ORACLE, RECONSTRUCTED]

class Step3Mode(object):
    """How the Step 3 intersection runs inside Algorithm 1. """
    FIXPOINT = 'fixpoint'
    SINGLE = 'single'
    OFF = 'off'
    ALL = [FIXPOINT, SINGLE, OFF]

##################################################################
# Trees
##################################################################

class Layer(object):
    """The image of one clause in a checking tree.

    Attributes
    ----------
    units : :obj:`tuple` of :obj:`Literal`
        The surviving literal occurrences in clause order.
    source_clause_index : int
        Index of the clause the layer was built from.
    """
    def __init__(self, units, source_clause_index):
        units = tuple(units)
        if len(units) > 3:
            raise ValueError('Layers hold at most 3 units, got %d' %(len(units)))
        self.units_ = units
        self.source_clause_index_ = int(source_clause_index)

    @property
    def units(self):
        """:obj:`tuple` of :obj:`Literal` : The units in order. """
        return self.units_

    @property
    def source_clause_index(self):
        """int : Index of the originating clause. """
        return self.source_clause_index_

    @property
    def width(self):
        """int : The number of units. """
        return len(self.units_)

    def to_clause(self):
        """Returns the layer's units as a clause. """
        return Clause(self.units_)

    def __eq__(self, other):
        if not isinstance(other, Layer):
            return NotImplemented
        return self.units_ == other.units_ and self.source_clause_index_ == other.source_clause_index_

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self.units_, self.source_clause_index_))

    def __repr__(self):
        return 'Layer(%s, clause=%d)' %([u.to_dimacs() for u in self.units_], self.source_clause_index_)

class CheckingTree(object):
    """A sequence of layers in clause order; k+1 layers make T^(k).

    Attributes
    ----------
    layers : :obj:`tuple` of :obj:`Layer`
        The layers in order.
    num_variables : int
        The variable count of the formula the tree was built from.
    """
    def __init__(self, layers, num_variables=None):
        self.layers_ = tuple(layers)
        max_var = 0
        for layer in self.layers_:
            for u in layer.units:
                max_var = max(max_var, u.variable)
        if num_variables is None or num_variables < max_var:
            num_variables = max_var
        self.num_variables_ = num_variables

    @staticmethod
    def from_formula(formula):
        """Builds the tree with one layer per clause of a formula. """
        layers = [Layer(c.literals, i) for i, c in enumerate(formula.clauses)]
        return CheckingTree(layers, formula.num_variables)

    @property
    def layers(self):
        """:obj:`tuple` of :obj:`Layer` : The layers in order. """
        return self.layers_

    @property
    def num_variables(self):
        """int : The variable count. """
        return self.num_variables_

    def append(self, layer):
        """Returns a new tree with one more layer at the end. """
        return CheckingTree(self.layers_ + (layer,), self.num_variables_)

    def literals(self):
        """Returns the sorted distinct literals occurring in any layer. """
        return sorted(set(u for layer in self.layers_ for u in layer.units))

    def __len__(self):
        return len(self.layers_)

    def __eq__(self, other):
        if not isinstance(other, CheckingTree):
            return NotImplemented
        return self.layers_ == other.layers_

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __repr__(self):
        return 'CheckingTree(%s)' %([[u.to_dimacs() for u in l.units] for l in self.layers_])

class StandardCheckingTree(object):
    """A checking tree paired with its set of contradiction pairs.

    Attributes
    ----------
    tree : :obj:`CheckingTree`
        The layers.
    pairs : :obj:`PairSet`
        Direct and indirect contradiction pairs.
    """
    def __init__(self, tree, pairs):
        self.tree_ = tree
        self.pairs_ = pairs

    @property
    def tree(self):
        """:obj:`CheckingTree` : The layers. """
        return self.tree_

    @property
    def pairs(self):
        """:obj:`PairSet` : The contradiction pairs. """
        return self.pairs_

    @property
    def layers(self):
        """:obj:`tuple` of :obj:`Layer` : Shortcut to the tree's layers. """
        return self.tree_.layers

    def literals(self):
        """Returns the sorted distinct literals of the tree. """
        return self.tree_.literals()

    def cross_layer_pairs(self):
        """Returns the candidate pairs of the tree, see `cross_layer_candidates`. """
        return cross_layer_candidates(self.tree_)

class DestroyedCheckingTree(object):
    """A standard tree after removing the negation of every forced literal.

    Attributes
    ----------
    base : :obj:`StandardCheckingTree`
        The tree that was destroyed; its pairs carry over unchanged.
    forced : :obj:`frozenset` of :obj:`Literal`
        The set S. Each member is assumed true, so its negation is removed.
    layers : :obj:`tuple` of :obj:`Layer`
        The layers after removal, positions renumbered.
    ell2 : :obj:`list` of int
        Indices of layers with one or two units left.
    ell3 : :obj:`list` of int
        Indices of layers with three units.
    emptied : :obj:`list` of int
        Indices of layers left without units.
    contradictory : bool
        True if S holds a literal and its negation.
    """
    def __init__(self, base, forced, layers):
        self.base_ = base
        self.forced_ = frozenset(forced)
        self.layers_ = tuple(layers)
        self.ell2_ = [k for k, l in enumerate(self.layers_) if 1 <= l.width <= 2]
        self.ell3_ = [k for k, l in enumerate(self.layers_) if l.width == 3]
        self.emptied_ = [k for k, l in enumerate(self.layers_) if l.width == 0]
        self.contradictory_ = any(negate(s) in self.forced_ for s in self.forced_)

    @property
    def base(self):
        """:obj:`StandardCheckingTree` : The tree that was destroyed. """
        return self.base_

    @property
    def forced(self):
        """:obj:`frozenset` of :obj:`Literal` : The destruction set S. """
        return self.forced_

    @property
    def forbidden(self):
        """:obj:`frozenset` of :obj:`Literal` : Alias of `forced`. """
        return self.forced_

    @property
    def layers(self):
        """:obj:`tuple` of :obj:`Layer` : The layers after removal. """
        return self.layers_

    @property
    def layers_after_removal(self):
        """:obj:`tuple` of :obj:`Layer` : Alias of `layers`. """
        return self.layers_

    @property
    def pairs(self):
        """:obj:`PairSet` : The contradiction pairs carried over from the base. """
        return self.base_.pairs

    @property
    def ell2(self):
        """:obj:`list` of int : Layers of width 1 or 2. """
        return list(self.ell2_)

    @property
    def ell3(self):
        """:obj:`list` of int : Layers of width 3. """
        return list(self.ell3_)

    @property
    def emptied(self):
        """:obj:`list` of int : Layers of width 0. """
        return list(self.emptied_)

    @property
    def contradictory(self):
        """bool : Whether S forces a literal and its negation. """
        return self.contradictory_

    def ell2_clauses(self):
        """Returns the ell2 layers as clauses for 2-SAT queries. """
        return [self.layers_[k].to_clause() for k in self.ell2_]

    def ell3_units(self):
        """Returns the (layer, position) keys of every ell3 unit in order. """
        return [(k, j) for k in self.ell3_ for j in range(self.layers_[k].width)]

    def unit(self, key):
        """Returns the literal at a (layer, position) key. """
        k, j = key
        return self.layers_[k].units[j]

    def as_tree(self):
        """Returns the remaining layers as a plain checking tree. """
        return CheckingTree(self.layers_, self.base_.tree.num_variables)

class Algorithm1Result(object):
    """Outcome of Algorithm 1 on a destroyed checking tree.

    Attributes
    ----------
    verdict : str
        A `Verdict` value.
    reason : str
        What decided the verdict.
    pairs : :obj:`PairSet`
        The repaired pair set; on a satisfiable verdict it adds every pair
        involving a deleted unit.
    useful : :obj:`dict`
        Final useful-unit sets keyed by (layer, position); a deleted unit
        keeps the set it had in the round that deleted it.
    deleted : :obj:`list` of :obj:`tuple`
        Deleted ell3 units in deletion order.
    trace : :obj:`list` of :obj:`dict`
        Events: `units` (the ell3 unit literals), `useful_units`, `step3` passes with before/after sets,
        `delete` rounds and the final `verdict`.
    """
    def __init__(self, verdict, reason, pairs, useful=None, deleted=None, trace=None):
        self.verdict = verdict
        self.reason = reason
        self.pairs = pairs
        self.useful = useful if useful is not None else {}
        self.deleted = deleted if deleted is not None else []
        self.trace = trace if trace is not None else []

    @property
    def satisfiable(self):
        """bool : True for a satisfiable verdict. """
        return self.verdict == Verdict.SATISFIABLE

##################################################################
# Standard trees
##################################################################

def direct_pairs(tree):
    """Returns every pair {a, ~a} whose two literals both occur in the tree. """
    literals = set(tree.literals())
    return PairSet([(l, negate(l)) for l in literals if l.polarity and negate(l) in literals])

def build_standard_tree(formula, pair_engine=PairEngine.ORACLE, step3_mode=Step3Mode.FIXPOINT,
                        bound=DEFAULT_PATH_BOUND):
    """Builds the standard checking tree of a formula one layer at a time.

    Parameters
    ----------
    formula : :obj:`Formula`
        The 3-CNF formula.
    pair_engine : str
        A `PairEngine` value.
    step3_mode : str
        A `Step3Mode` value, used by the reconstructed engine.
    bound : int
        Enumeration bound for the oracle engine.

    Returns
    -------
    :obj:`StandardCheckingTree`
        The tree of all clauses with its accumulated pairs.

    Raises
    ------
    BoundExceededError
        If long path enumeration exceeds the bound in oracle mode.
    """
    if pair_engine not in PairEngine.ALL:
        raise ValueError('Pair engine %s not supported' %(pair_engine))
    clauses = formula.clauses
    empty = CheckingTree([], formula.num_variables)
    if len(clauses) == 0:
        return StandardCheckingTree(empty, PairSet())

    first = empty.append(Layer(clauses[0].literals, 0))
    std = StandardCheckingTree(first, direct_pairs(first))
    for i in range(1, len(clauses)):
        std = add_layer(std, clauses[i], pair_engine, step3_mode, bound, source_clause_index=i)
    logging.debug('Built standard tree (%s): %d layers, %d pairs' %(pair_engine, len(std.tree), len(std.pairs)))
    return std

def add_layer(t, clause, pair_engine=PairEngine.ORACLE, step3_mode=Step3Mode.FIXPOINT,
              bound=DEFAULT_PATH_BOUND, source_clause_index=None):
    """Adds the layer of the next clause and the contradiction pairs it creates.

    The oracle engine adds every indirect pair of the grown tree. The
    reconstructed engine checks each candidate pair not yet known: pairs
    whose literals already lie in different layers of `t` go through
    `new_pair_check`; pairs that need the new layer are new iff the tree
    destroyed by both literals is unsatisfiable per Algorithm 1. Existing
    pairs are never removed.

    Returns
    -------
    :obj:`StandardCheckingTree`
        The grown tree.
    """
    if source_clause_index is None:
        source_clause_index = len(t.tree)
    grown = t.tree.append(Layer(clause.literals, source_clause_index))
    pairs = t.pairs.union(direct_pairs(grown))

    if pair_engine == PairEngine.ORACLE:
        return StandardCheckingTree(grown, pairs.union(indirect_pairs_oracle(grown, bound)))
    if pair_engine != PairEngine.RECONSTRUCTED:
        raise ValueError('Pair engine %s not supported' %(pair_engine))

    old_candidates = t.cross_layer_pairs()
    candidates = sorted(old_candidates | cross_layer_candidates(grown),
                        key=lambda p: (p[0].sort_key, p[1].sort_key))
    added = []
    for a, b in candidates:
        if pairs.contains(a, b):
            continue
        if (a, b) in old_candidates:
            is_pair = new_pair_check(t, a, b, clause, step3_mode)
        else:
            is_pair = not algorithm1(destroy(t, [a, b]), step3_mode).satisfiable
        if is_pair:
            added.append((a, b))
    logging.debug('Layer %d: %d new pairs from the reconstructed check' %(source_clause_index, len(added)))
    return StandardCheckingTree(grown, pairs.union(added))

##################################################################
# Destroyed trees and Algorithm 1
##################################################################

def destroy(t, forced):
    """Destroys a standard tree by a set of literals assumed true.

    Every occurrence of the negation of a member of `forced` is removed;
    layers are then split into ell2 (width 1-2) and ell3 (width 3). The
    base pair set carries over unchanged.

    Parameters
    ----------
    t : :obj:`StandardCheckingTree`
        The tree to destroy.
    forced : iterable of :obj:`Literal`
        The set S.

    Returns
    -------
    :obj:`DestroyedCheckingTree`
        The destroyed tree.
    """
    forced = frozenset(forced)
    removed = set(negate(s) for s in forced)
    layers = [Layer([u for u in layer.units if u not in removed], layer.source_clause_index)
              for layer in t.tree.layers]
    return DestroyedCheckingTree(t, forced, layers)

def useful_units(d, x):
    """Returns the useful units U_x of an ell3 unit.

    U_x holds every literal u occurring in an ell2 layer such that the ell2
    layers, read as a 2-CNF formula, have a solution making both u and x
    true. An empty ell2 gives the empty set.

    Parameters
    ----------
    d : :obj:`DestroyedCheckingTree`
        The destroyed tree.
    x : :obj:`tuple`
        The (layer, position) key of a unit in an ell3 layer.

    Returns
    -------
    :obj:`frozenset` of :obj:`Literal`
        The useful units.
    """
    if x[0] not in d.ell3:
        raise ValueError('Unit %s is not in an ell3 layer' %(x,))
    literal = d.unit(x)
    ell2 = d.ell2_clauses()
    candidates = sorted(set(u for c in ell2 for u in c))
    useful = set()
    for u in candidates:
        if solve_2sat(ell2 + [Clause([literal]), Clause([u])]) is not None:
            useful.add(u)
    return frozenset(useful)

def all_useful_units(d):
    """Returns U_x for every ell3 unit, keyed by (layer, position). """
    return dict((x, useful_units(d, x)) for x in d.ell3_units())

def _linked(d, pairs, x, y):
    if x[0] == y[0]:
        return False
    a = d.unit(x)
    b = d.unit(y)
    return a != negate(b) and not pairs.contains(a, b)

def step3_intersect(d, useful, pairs, mode=Step3Mode.FIXPOINT, active=None, trace=None, round_index=0):
    """Applies the Step 3 intersection rule to useful-unit sets.

    Every two units x, y in different ell3 layers that are neither a
    contradiction pair nor negations of each other get U_x and U_y replaced
    by their intersection. Sets only shrink, so repeating passes reaches a
    fixpoint.

    Parameters
    ----------
    d : :obj:`DestroyedCheckingTree`
        The destroyed tree.
    useful : :obj:`dict`
        Useful-unit sets keyed by (layer, position).
    pairs : :obj:`PairSet`
        The contradiction pairs deciding which units interact.
    mode : str
        FIXPOINT repeats passes until nothing changes, SINGLE runs one pass
        and OFF returns the sets unchanged.
    active : :obj:`list` of :obj:`tuple`
        Units taking part; defaults to every key of `useful`.
    trace : :obj:`list`
        If given, one `step3` event per pass is appended.
    round_index : int
        Deletion round recorded in trace events.

    Returns
    -------
    :obj:`dict`
        The new useful-unit sets.
    """
    if mode not in Step3Mode.ALL:
        raise ValueError('Step 3 mode %s not supported' %(mode))
    current = dict(useful)
    if mode == Step3Mode.OFF:
        return current
    keys = sorted(active) if active is not None else sorted(current.keys())
    links = [(x, y) for i, x in enumerate(keys) for y in keys[i+1:] if _linked(d, pairs, x, y)]

    pass_index = 0
    while True:
        before = dict((x, current[x]) for x in keys)
        for x, y in links:
            common = current[x] & current[y]
            current[x] = common
            current[y] = common
        after = dict((x, current[x]) for x in keys)
        if trace is not None:
            trace.append({'event': 'step3', 'round': round_index, 'pass': pass_index,
                          'before': before, 'after': after})
        logging.debug('Step 3 round %d pass %d: %d links' %(round_index, pass_index, len(links)))
        pass_index += 1
        if mode == Step3Mode.SINGLE or after == before:
            break
    return current

def _starved(d, useful_set):
    # a unit dies when some ell2 layer offers it no useful unit
    for k in d.ell2:
        if len(useful_set & set(d.layers[k].units)) == 0:
            return True
    return False

def _finish(verdict, reason, pairs, useful, deleted, trace):
    trace.append({'event': 'verdict', 'verdict': verdict, 'reason': reason})
    logging.debug('Algorithm 1: %s (%s)' %(verdict, reason))
    return Algorithm1Result(verdict, reason, pairs, useful, deleted, trace)

def algorithm1(d, step3_mode=Step3Mode.FIXPOINT):
    """Runs Algorithm 1 on a destroyed checking tree.

    1. A contradictory forced set or a layer emptied by destruction is
       unsatisfiable.
    2. Unsatisfiable ell2 layers (as 2-SAT) are unsatisfiable.
    3. Useful units are computed for every ell3 unit.
    4. Step 3 intersects them.
    5. An ell3 unit is deleted when some ell2 layer contributes nothing to
       its useful units.
    6. Steps 4-5 repeat from the sets of step 3, restricted to the
       surviving units, until no unit is deleted.
    7. An ell3 layer that lost every unit is unsatisfiable; otherwise the
       tree is satisfiable and every deleted unit joins a contradiction pair
       with the literals of the other layers.

    Parameters
    ----------
    d : :obj:`DestroyedCheckingTree`
        The destroyed tree.
    step3_mode : str
        A `Step3Mode` value.

    Returns
    -------
    :obj:`Algorithm1Result`
        The verdict, repaired pairs and trace.
    """
    trace = [{'event': 'units', 'units': dict((x, d.unit(x)) for x in d.ell3_units())}]
    pairs = d.pairs
    if d.contradictory:
        return _finish(Verdict.UNSATISFIABLE, 'forced set holds a literal and its negation', pairs, {}, [], trace)
    if len(d.emptied) > 0:
        return _finish(Verdict.UNSATISFIABLE, 'layer %d emptied by destruction' %(d.emptied[0]), pairs, {}, [], trace)
    ell2 = d.ell2_clauses()
    if len(ell2) > 0 and solve_2sat(ell2) is None:
        return _finish(Verdict.UNSATISFIABLE, 'ell2 layers are unsatisfiable', pairs, {}, [], trace)

    base = all_useful_units(d)
    trace.append({'event': 'useful_units', 'useful': dict(base)})

    active = d.ell3_units()
    deleted = []
    useful = {}
    round_index = 0
    while True:
        current = step3_intersect(d, base, pairs, step3_mode, active, trace, round_index)
        newly = [x for x in active if _starved(d, current[x])]
        trace.append({'event': 'delete', 'round': round_index, 'units': list(newly)})
        # deleted units keep the set they starved with
        useful.update((x, current[x]) for x in newly)
        if len(newly) == 0:
            useful.update((x, current[x]) for x in active)
            break
        deleted.extend(newly)
        active = [x for x in active if x not in newly]
        round_index += 1

    deleted_set = set(deleted)
    for k in d.ell3:
        if all((k, j) in deleted_set for j in range(d.layers[k].width)):
            return _finish(Verdict.UNSATISFIABLE, 'ell3 layer %d lost all its units' %(k), pairs, useful, deleted, trace)

    repaired = []
    for x in deleted:
        a = d.unit(x)
        for k, layer in enumerate(d.layers):
            if k == x[0]:
                continue
            for b in layer.units:
                if b != a:
                    repaired.append((a, b))
    return _finish(Verdict.SATISFIABLE, 'every ell3 layer keeps a unit', pairs.union(repaired), useful, deleted, trace)

def new_pair_check(t, x, y, next_clause, step3_mode=Step3Mode.FIXPOINT):
    """Decides whether {x, y} becomes a contradiction pair when a clause is added.

    For every literal v of the next clause the tree is destroyed by
    {x, y, v}; the pair is new iff Algorithm 1 calls every one of these
    destroyed trees unsatisfiable, since a long path of the grown tree picks
    some v from the new layer.

    Parameters
    ----------
    t : :obj:`StandardCheckingTree`
        The tree before the clause is added.
    x, y : :obj:`Literal`
        Literals occurring in `t`.
    next_clause : :obj:`Clause`
        The clause being added.
    step3_mode : str
        A `Step3Mode` value.

    Returns
    -------
    bool
        True if the pair is declared new.
    """
    for v in next_clause:
        if algorithm1(destroy(t, [x, y, v]), step3_mode).satisfiable:
            return False
    return True

def is_unsatisfiable_simplified(t):
    """Applies the simplified unsatisfiability criterion to a standard tree.

    The tree is unsatisfiable iff some layer is empty or some two layers
    have every cross-layer unit pair in the pair set. Equal literals in the
    two layers are never a contradiction pair.
    """
    layers = t.tree.layers
    if any(layer.width == 0 for layer in layers):
        return True
    for i in range(len(layers)):
        for j in range(i + 1, len(layers)):
            if all(t.pairs.contains(u, v) for u in layers[i].units for v in layers[j].units):
                return True
    return False

def residual_formula(d, names=None):
    """Returns the destroyed layers as clauses plus a unit clause per forced literal. """
    clauses = [layer.to_clause() for layer in d.layers]
    clauses.extend([Clause([s]) for s in sorted(d.forced)])
    num_vars = d.base.tree.num_variables
    for s in d.forced:
        num_vars = max(num_vars, s.variable)
    return Formula(clauses, num_vars, names)

def decide(formula, pair_engine=PairEngine.RECONSTRUCTED, step3_mode=Step3Mode.FIXPOINT,
           bound=DEFAULT_PATH_BOUND):
    """Decides a formula by building its standard tree and applying the
    simplified criterion.

    Returns
    -------
    str
        A `Verdict` value.
    """
    std = build_standard_tree(formula, pair_engine, step3_mode, bound)
    if is_unsatisfiable_simplified(std):
        return Verdict.UNSATISFIABLE
    return Verdict.SATISFIABLE
