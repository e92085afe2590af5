"""
Exact deciders used as ground truth: exhaustive 3-SAT, 2-SAT over the
implication graph, long path enumeration and the contradiction pair oracle
Author: ctreepy developers
"""
import logging

import numpy as np
import scipy.sparse as sp
from scipy.sparse import csgraph

from .cnf import Assignment, Literal, negate

DEFAULT_MAX_VARIABLES = 32
DEFAULT_PATH_BOUND = 2**24
CHUNK_BITS = 16

class BoundExceededError(ValueError):
    """ Raised when an exhaustive computation would exceed its configured bound. """
    pass

class PairSet(object):
    """An immutable set of unordered literal pairs.

    Pairs are stored canonically, the smaller literal (by variable, then
    polarity) first, so {a, b} and {b, a} are the same member. Reflexive
    pairs are rejected.
    """
    def __init__(self, pairs=None):
        keys = set()
        if pairs is not None:
            for a, b in pairs:
                keys.add(PairSet.key(a, b))
        self.pairs_ = frozenset(keys)

    @staticmethod
    def key(a, b):
        """Returns the canonical (smaller, larger) tuple for a pair.

        Raises
        ------
        ValueError
            If both literals are equal.
        """
        if a == b:
            raise ValueError('Contradiction pairs join two different literals, got %r twice' %(a,))
        if b < a:
            return (b, a)
        return (a, b)

    def contains(self, a, b):
        """Returns True if {a, b} is a member. Reflexive queries are False. """
        if a == b:
            return False
        return PairSet.key(a, b) in self.pairs_

    def union(self, other):
        """Returns a new PairSet holding the members of both sets. """
        return PairSet(list(self.pairs_) + list(other))

    def __contains__(self, pair):
        a, b = pair
        return self.contains(a, b)

    def __iter__(self):
        return iter(sorted(self.pairs_, key=lambda p: (p[0].sort_key, p[1].sort_key)))

    def __len__(self):
        return len(self.pairs_)

    def __eq__(self, other):
        if not isinstance(other, PairSet):
            return NotImplemented
        return self.pairs_ == other.pairs_

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash(self.pairs_)

    def __repr__(self):
        return 'PairSet(%s)' %([(a.to_dimacs(), b.to_dimacs()) for a, b in self])

class LongPath(object):
    """One unit picked from every layer with no two picks negating each other.

    Attributes
    ----------
    picks : :obj:`tuple` of :obj:`tuple`
        (layer index, unit position, literal) per layer, both indices
        starting at 0. The unit numbered j in 1..3 within its clause sits at
        position j - 1.
    """
    def __init__(self, picks):
        self.picks_ = tuple(picks)

    @property
    def picks(self):
        """:obj:`tuple` : The (layer, position, literal) picks. """
        return self.picks_

    @property
    def literals(self):
        """:obj:`tuple` of :obj:`Literal` : The picked literals in layer order. """
        return tuple(p[2] for p in self.picks_)

    def to_assignment(self):
        """Returns the partial assignment making every picked literal true. """
        return Assignment(dict((l.variable, l.polarity) for l in self.literals))

    def __eq__(self, other):
        if not isinstance(other, LongPath):
            return NotImplemented
        return self.picks_ == other.picks_

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash(self.picks_)

    def __repr__(self):
        return 'LongPath(%s)' %([l.to_dimacs() for l in self.literals])

##################################################################
# Satisfiability
##################################################################

def brute_force_sat(formula, max_variables=DEFAULT_MAX_VARIABLES):
    """Decides a formula by trying every assignment.

    Assignments are visited in lexicographic order with variable 1 as the
    most significant position and False before True, so the returned witness
    is the first satisfying assignment in that order. The cube is evaluated in
    numpy chunks of 2^16 assignments.

    Parameters
    ----------
    formula : :obj:`Formula`
        The formula to decide.
    max_variables : int
        Exhaustion bound on the number of variables.

    Returns
    -------
    :obj:`Assignment`
        The first satisfying assignment, or None if there is none.

    Raises
    ------
    BoundExceededError
        If the formula has more variables than the bound.
    """
    n = formula.num_variables
    if n > max_variables:
        raise BoundExceededError('Formula has %d variables, exhaustion bound is %d' %(n, max_variables))
    if formula.num_clauses == 0:
        return Assignment(dict((v, False) for v in range(1, n + 1)))
    if any(len(c) == 0 for c in formula.clauses):
        return None

    # one column per variable, variable 1 in the most significant bit
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    clause_vars = [np.array([l.variable - 1 for l in c], dtype=np.int64) for c in formula.clauses]
    clause_pols = [np.array([l.polarity for l in c], dtype=bool) for c in formula.clauses]

    total = 2**n
    chunk = 2**CHUNK_BITS
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        bits = ((idx[:, np.newaxis] >> shifts[np.newaxis, :]) & 1).astype(bool)
        sat = np.ones(idx.shape[0], dtype=bool)
        for cv, cp in zip(clause_vars, clause_pols):
            sat &= np.any(bits[:, cv] == cp[np.newaxis, :], axis=1)
            if not sat.any():
                break
        hits = np.flatnonzero(sat)
        if hits.shape[0] > 0:
            row = bits[hits[0]]
            return Assignment(dict((v + 1, bool(row[v])) for v in range(n)))
    return None

def _literal_node(literal, var_index):
    return 2 * var_index[literal.variable] + (0 if literal.polarity else 1)

def solve_2sat(clauses):
    """Decides a list of clauses with one or two literals each.

    The implication graph is built as a sparse matrix; the formula is
    unsatisfiable iff some variable shares a strongly connected component
    with its negation. A witness is built variable by variable, preferring
    False, by propagating the chosen literal along the graph.

    Parameters
    ----------
    clauses : :obj:`list` of :obj:`Clause`
        Clauses of width 0, 1 or 2.

    Returns
    -------
    :obj:`Assignment`
        A satisfying assignment over the mentioned variables, or None. An
        empty clause gives None.

    Raises
    ------
    ValueError
        If a clause holds three literals.
    """
    clauses = list(clauses)
    for clause in clauses:
        if len(clause) > 2:
            raise ValueError('2-SAT input clauses hold at most 2 literals, got %d' %(len(clause)))
    if any(len(c) == 0 for c in clauses):
        return None

    variables = sorted(set(l.variable for c in clauses for l in c))
    if len(variables) == 0:
        return Assignment()
    var_index = dict((v, i) for i, v in enumerate(variables))
    num_nodes = 2 * len(variables)

    rows = []
    cols = []
    for clause in clauses:
        first = clause[0]
        second = clause[len(clause) - 1]
        # (a | b) gives ~a -> b and ~b -> a; a unit clause gives ~a -> a
        rows.append(_literal_node(negate(first), var_index))
        cols.append(_literal_node(second, var_index))
        rows.append(_literal_node(negate(second), var_index))
        cols.append(_literal_node(first, var_index))
    graph = sp.csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(num_nodes, num_nodes))

    num_comps, labels = csgraph.connected_components(graph, directed=True, connection='strong')
    for i in range(len(variables)):
        if labels[2 * i] == labels[2 * i + 1]:
            return None

    values = {}
    for i, var in enumerate(variables):
        if var in values:
            continue
        start = 2 * i + 1
        reach = csgraph.breadth_first_order(graph, start, directed=True, return_predecessors=False)
        if 2 * i in reach:
            start = 2 * i
            reach = csgraph.breadth_first_order(graph, start, directed=True, return_predecessors=False)
        for node in reach:
            reached_var = variables[node // 2]
            if reached_var not in values:
                values[reached_var] = (node % 2 == 0)
    return Assignment(values)

##################################################################
# Long paths and contradiction pairs
##################################################################

def _check_bound(widths, bound):
    product = 1
    for w in widths:
        product *= w
        if product > bound:
            raise BoundExceededError('Long path enumeration over widths %s exceeds the bound %d' %(list(widths), bound))

def _paths(choices, chosen, counts):
    depth = len(chosen)
    if depth == len(choices):
        yield tuple(chosen)
        return
    for pick in choices[depth]:
        literal = pick[-1]
        if counts.get(negate(literal), 0) > 0:
            continue
        chosen.append(pick)
        counts[literal] = counts.get(literal, 0) + 1
        for path in _paths(choices, chosen, counts):
            yield path
        counts[literal] -= 1
        chosen.pop()

def enumerate_long_paths(tree, bound=DEFAULT_PATH_BOUND):
    """Yields every long path of a checking tree.

    Paths come in lexicographic order of (layer, position) picks. Nothing is
    yielded when a layer is empty.

    Parameters
    ----------
    tree : :obj:`CheckingTree`
        The tree whose layers are enumerated.
    bound : int
        Bound on the product of the layer widths.

    Raises
    ------
    BoundExceededError
        If the product of layer widths exceeds the bound.
    """
    widths = [len(layer.units) for layer in tree.layers]
    _check_bound(widths, bound)
    if any(w == 0 for w in widths):
        return
    choices = []
    for k, layer in enumerate(tree.layers):
        choices.append([(k, j, u) for j, u in enumerate(layer.units)])
    for picks in _paths(choices, [], {}):
        yield LongPath(picks)

def _distinct_units(layer):
    seen = []
    for u in layer.units:
        if u not in seen:
            seen.append(u)
    return seen

def distinct_long_paths(tree, bound=DEFAULT_PATH_BOUND):
    """Yields long paths as literal tuples, one per distinct choice of literals.

    Positions holding the same literal inside a layer give the same path, so
    a layer such as (x | x | x) contributes a single choice.

    Raises
    ------
    BoundExceededError
        If the product of the distinct layer widths exceeds the bound.
    """
    choices = [[(u,) for u in _distinct_units(layer)] for layer in tree.layers]
    _check_bound([len(c) for c in choices], bound)
    if any(len(c) == 0 for c in choices):
        return
    for picks in _paths(choices, [], {}):
        yield tuple(p[0] for p in picks)

def cross_layer_candidates(tree):
    """Returns the candidate contradiction pairs of a tree.

    A candidate is an unordered pair {a, b} with a != b and a != ~b such that
    a and b occur in two different layers. Literals that only share a layer
    never share a long path, so they are not candidates.

    Returns
    -------
    :obj:`set` of :obj:`tuple`
        Canonical (smaller, larger) literal tuples.
    """
    layers_of = {}
    for k, layer in enumerate(tree.layers):
        for u in layer.units:
            layers_of.setdefault(u, set()).add(k)
    literals = sorted(layers_of.keys())
    candidates = set()
    for i, a in enumerate(literals):
        for b in literals[i + 1:]:
            if b == negate(a):
                continue
            la = layers_of[a]
            lb = layers_of[b]
            if len(la | lb) > 1:
                candidates.add(PairSet.key(a, b))
    return candidates

def indirect_pairs_oracle(tree, bound=DEFAULT_PATH_BOUND):
    """Computes the indirect contradiction pairs of a tree by enumeration.

    Parameters
    ----------
    tree : :obj:`CheckingTree`
        The tree to examine.
    bound : int
        Bound on the product of distinct layer widths.

    Returns
    -------
    :obj:`PairSet`
        Every candidate pair (see `cross_layer_candidates`) that no long path
        contains. With no long path at all, every candidate is returned.

    Raises
    ------
    BoundExceededError
        If the enumeration bound is exceeded.
    """
    candidates = cross_layer_candidates(tree)
    together = set()
    num_paths = 0
    for path in distinct_long_paths(tree, bound):
        num_paths += 1
        literals = sorted(set(path))
        for i, a in enumerate(literals):
            for b in literals[i + 1:]:
                together.add((a, b))
    logging.debug('Pair oracle: %d distinct long paths, %d candidates' %(num_paths, len(candidates)))
    return PairSet(candidates - together)
