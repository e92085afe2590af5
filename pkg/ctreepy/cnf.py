"""
Variables, literals, clauses and 3-CNF formulas, with DIMACS text conversion
Author: ctreepy developers
"""
import logging

MAX_CLAUSE_WIDTH = 3

class DimacsError(ValueError):
    """ Raised when DIMACS text does not describe a 3-CNF formula. """
    pass

class MissingVariableError(KeyError):
    """ Raised when an assignment does not cover a variable it is asked about. """
    pass

class Literal(object):
    """An occurrence-free literal: a variable index and a polarity.

    Attributes
    ----------
    variable : int
        The variable index, starting at 1.
    polarity : bool
        True for the positive literal x, False for its negation.
    """
    def __init__(self, variable, polarity=True):
        """Create a literal.

        Parameters
        ----------
        variable : int
            The variable index, starting at 1.
        polarity : bool
            True for the positive literal x, False for its negation.

        Raises
        ------
        ValueError
            If the variable index is smaller than 1.
        """
        variable = int(variable)
        if variable < 1:
            raise ValueError('Variable indices start at 1, got %d' %(variable))
        self.variable_ = variable
        self.polarity_ = bool(polarity)

    @staticmethod
    def from_dimacs(value):
        """Creates a literal from a signed, non-zero DIMACS integer. """
        value = int(value)
        if value == 0:
            raise ValueError('0 terminates a clause and is not a literal')
        return Literal(abs(value), value > 0)

    @property
    def variable(self):
        """int : The variable index. """
        return self.variable_

    @property
    def polarity(self):
        """bool : True for x, False for x-bar. """
        return self.polarity_

    @property
    def sort_key(self):
        """:obj:`tuple` : Canonical ordering key, (variable, polarity). """
        return (self.variable_, self.polarity_)

    def to_dimacs(self):
        """int : The signed DIMACS integer for this literal. """
        if self.polarity_:
            return self.variable_
        return -self.variable_

    def __eq__(self, other):
        if not isinstance(other, Literal):
            return NotImplemented
        return self.variable_ == other.variable_ and self.polarity_ == other.polarity_

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __lt__(self, other):
        return self.sort_key < other.sort_key

    def __hash__(self):
        return hash(self.sort_key)

    def __repr__(self):
        return 'Literal(%d)' %(self.to_dimacs())

def negate(literal):
    """Returns the literal with the same variable and the opposite polarity. """
    return Literal(literal.variable, not literal.polarity)

class Clause(object):
    """A disjunction of at most three literals.

    Literal positions are kept as given, duplicates included, since a
    checking tree layer addresses its units by position.

    Attributes
    ----------
    literals : :obj:`tuple` of :obj:`Literal`
        The literals in their original order.
    """
    def __init__(self, literals):
        literals = tuple(literals)
        if len(literals) > MAX_CLAUSE_WIDTH:
            raise ValueError('Clauses hold at most %d literals, got %d' %(MAX_CLAUSE_WIDTH, len(literals)))
        for l in literals:
            if not isinstance(l, Literal):
                raise ValueError('Clause members must be Literal objects, got %r' %(l,))
        self.literals_ = literals

    @staticmethod
    def from_dimacs(values):
        """Creates a clause from signed DIMACS integers (no terminator). """
        return Clause([Literal.from_dimacs(v) for v in values])

    @property
    def literals(self):
        """:obj:`tuple` of :obj:`Literal` : The literals in order. """
        return self.literals_

    def to_dimacs(self):
        """:obj:`list` of int : The signed DIMACS integers of the clause. """
        return [l.to_dimacs() for l in self.literals_]

    def __len__(self):
        return len(self.literals_)

    def __iter__(self):
        return iter(self.literals_)

    def __getitem__(self, i):
        return self.literals_[i]

    def __eq__(self, other):
        if not isinstance(other, Clause):
            return NotImplemented
        return self.literals_ == other.literals_

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash(self.literals_)

    def __repr__(self):
        return 'Clause(%s)' %(self.to_dimacs())

class Formula(object):
    """A 3-CNF formula: an ordered list of clauses over dense variables.

    Attributes
    ----------
    clauses : :obj:`tuple` of :obj:`Clause`
        The clauses in order.
    num_variables : int
        The number of variables; every literal's variable lies in
        [1, num_variables].
    names : :obj:`dict` mapping int to str
        Optional readable names for variables, carried through DIMACS
        `c name` comment lines.
    """
    def __init__(self, clauses, num_variables=None, names=None):
        """Create a formula.

        Parameters
        ----------
        clauses : :obj:`list` of :obj:`Clause`
            The clauses in order.
        num_variables : int
            The variable count. Defaults to the largest variable used.
        names : :obj:`dict` mapping int to str
            Optional variable names.

        Raises
        ------
        ValueError
            If a literal or a name refers to a variable outside
            [1, num_variables], or a name is empty or holds whitespace
            other than single inner spaces.
        """
        self.clauses_ = tuple(clauses)
        max_var = 0
        for clause in self.clauses_:
            for l in clause:
                max_var = max(max_var, l.variable)
        if num_variables is None:
            num_variables = max_var
        if max_var > num_variables:
            raise ValueError('Variable %d exceeds the variable count %d' %(max_var, num_variables))
        self.num_variables_ = int(num_variables)

        self.names_ = {}
        if names is not None:
            for var, name in names.items():
                var = int(var)
                if var < 1 or var > self.num_variables_:
                    raise ValueError('Name given for unknown variable %d' %(var))
                name = str(name)
                if len(name) == 0 or name != ' '.join(name.split()):
                    raise ValueError('Name %r of variable %d must be non-empty words separated by single spaces' %(name, var))
                self.names_[var] = name

    @property
    def clauses(self):
        """:obj:`tuple` of :obj:`Clause` : The clauses in order. """
        return self.clauses_

    @property
    def num_variables(self):
        """int : The number of variables. """
        return self.num_variables_

    @property
    def num_clauses(self):
        """int : The number of clauses. """
        return len(self.clauses_)

    @property
    def names(self):
        """:obj:`dict` : A copy of the variable name table. """
        return dict(self.names_)

    def name_of(self, variable):
        """Returns the readable name of a variable, falling back to x<index>. """
        return self.names_.get(variable, 'x%d' %(variable))

    def format_literal(self, literal):
        """Returns a readable literal such as `alpha` or `~s`. """
        name = self.name_of(literal.variable)
        if literal.polarity:
            return name
        return '~' + name

    def variable_named(self, name):
        """Returns the variable carrying the given name.

        Raises
        ------
        KeyError
            If no variable has that name.
        """
        for var in sorted(self.names_.keys()):
            if self.names_[var] == name:
                return var
        raise KeyError('No variable named %s' %(name))

    def parse_literal(self, token):
        """Resolves `name`, `~name` or a signed integer into a literal. """
        token = token.strip()
        try:
            return Literal.from_dimacs(int(token))
        except ValueError:
            pass
        polarity = True
        if token.startswith('~') or token.startswith('-'):
            polarity = False
            token = token[1:]
        return Literal(self.variable_named(token), polarity)

    def with_clauses(self, clauses):
        """Returns a formula over the same variables and names with other clauses. """
        return Formula(clauses, self.num_variables_, self.names_)

    def __eq__(self, other):
        if not isinstance(other, Formula):
            return NotImplemented
        return (self.clauses_ == other.clauses_ and
                self.num_variables_ == other.num_variables_ and
                self.names_ == other.names_)

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __repr__(self):
        return 'Formula(%d vars, %s)' %(self.num_variables_, [c.to_dimacs() for c in self.clauses_])

class Assignment(object):
    """A map from variable index to truth value.

    Attributes
    ----------
    values : :obj:`dict` mapping int to bool
        The truth value of every covered variable.
    """
    def __init__(self, values=None):
        self.values_ = {}
        if values is not None:
            for var, value in values.items():
                self.values_[int(var)] = bool(value)

    @property
    def values(self):
        """:obj:`dict` : A copy of the variable to value map. """
        return dict(self.values_)

    def __getitem__(self, variable):
        try:
            return self.values_[variable]
        except KeyError:
            raise MissingVariableError('Assignment has no value for variable %d' %(variable))

    def __contains__(self, variable):
        return variable in self.values_

    def __len__(self):
        return len(self.values_)

    def satisfies(self, literal):
        """Returns True if the assignment makes the literal true. """
        return self[literal.variable] == literal.polarity

    def to_dimacs(self):
        """:obj:`list` of int : Signed integers in variable order, DIMACS `v` line style. """
        return [v if self.values_[v] else -v for v in sorted(self.values_.keys())]

    def __eq__(self, other):
        if not isinstance(other, Assignment):
            return NotImplemented
        return self.values_ == other.values_

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __repr__(self):
        return 'Assignment(%s)' %(self.to_dimacs())

def evaluate(formula, assignment):
    """Evaluates a formula under a total assignment.

    Parameters
    ----------
    formula : :obj:`Formula`
        The formula to evaluate.
    assignment : :obj:`Assignment`
        Values for every variable of the formula.

    Returns
    -------
    bool
        True iff every clause holds a literal made true. The empty formula
        is true and the empty clause is false.

    Raises
    ------
    MissingVariableError
        If the assignment misses one of the formula's variables.
    """
    for var in range(1, formula.num_variables + 1):
        if var not in assignment:
            raise MissingVariableError('Assignment has no value for variable %d' %(var))
    for clause in formula.clauses:
        if not any(assignment.satisfies(l) for l in clause):
            return False
    return True

def _parse_name_comment(tokens, line_num):
    if len(tokens) < 4:
        raise DimacsError('Line %d: name comments read "c name <index> <string>"' %(line_num))
    try:
        var = int(tokens[2])
    except ValueError:
        raise DimacsError('Line %d: invalid variable index %s in name comment' %(line_num, tokens[2]))
    return var, ' '.join(tokens[3:])

def parse_dimacs(text):
    """Parses DIMACS CNF text into a formula.

    Clause order and literal order inside each clause are kept exactly.
    Comment lines of the form `c name <index> <string>` fill the variable
    name table; other comments are skipped.

    Parameters
    ----------
    text : str
        The DIMACS text.

    Returns
    -------
    :obj:`Formula`
        The parsed formula.

    Raises
    ------
    DimacsError
        If the header is missing or malformed, a clause holds more than
        three literals, a variable exceeds the header count, the last clause
        lacks its 0 terminator, or the clause count disagrees with the header.
    """
    num_vars = None
    num_clauses = None
    names = {}
    clauses = []
    current = []

    for line_num, line in enumerate(text.splitlines(), 1):
        tokens = line.split()
        if len(tokens) == 0:
            continue
        if tokens[0] == 'c':
            if len(tokens) > 1 and tokens[1] == 'name':
                var, name = _parse_name_comment(tokens, line_num)
                names[var] = name
            continue
        if tokens[0] == 'p':
            if num_vars is not None:
                raise DimacsError('Line %d: duplicate problem line' %(line_num))
            if len(tokens) != 4 or tokens[1] != 'cnf':
                raise DimacsError('Line %d: malformed header "%s"' %(line_num, line.strip()))
            try:
                num_vars = int(tokens[2])
                num_clauses = int(tokens[3])
            except ValueError:
                raise DimacsError('Line %d: malformed header "%s"' %(line_num, line.strip()))
            if num_vars < 0 or num_clauses < 0:
                raise DimacsError('Line %d: negative counts in header' %(line_num))
            continue
        if num_vars is None:
            raise DimacsError('Line %d: clause data before the "p cnf" header' %(line_num))

        for token in tokens:
            try:
                value = int(token)
            except ValueError:
                raise DimacsError('Line %d: invalid literal %s' %(line_num, token))
            if value == 0:
                clauses.append(Clause(current))
                current = []
                continue
            if abs(value) > num_vars:
                raise DimacsError('Line %d: variable %d out of range for %d variables' %(line_num, abs(value), num_vars))
            if len(current) == MAX_CLAUSE_WIDTH:
                raise DimacsError('Line %d: clause longer than %d literals, instance is not 3-CNF' %(line_num, MAX_CLAUSE_WIDTH))
            current.append(Literal.from_dimacs(value))

    if num_vars is None:
        raise DimacsError('Missing "p cnf" header')
    if len(current) > 0:
        raise DimacsError('Last clause is missing its 0 terminator')
    if len(clauses) != num_clauses:
        raise DimacsError('Header declares %d clauses but %d were read' %(num_clauses, len(clauses)))
    for var in names.keys():
        if var < 1 or var > num_vars:
            raise DimacsError('Name given for variable %d outside the header range' %(var))

    logging.debug('Parsed DIMACS formula with %d variables and %d clauses' %(num_vars, len(clauses)))
    return Formula(clauses, num_vars, names)

def serialize_dimacs(formula):
    """Serializes a formula to DIMACS CNF text.

    Name comments come first, in variable order, then the header and one
    clause per line.

    Parameters
    ----------
    formula : :obj:`Formula`
        The formula to write.

    Returns
    -------
    str
        Text that `parse_dimacs` turns back into an equal formula.
    """
    lines = []
    names = formula.names
    for var in sorted(names.keys()):
        lines.append('c name %d %s' %(var, names[var]))
    lines.append('p cnf %d %d' %(formula.num_variables, formula.num_clauses))
    for clause in formula.clauses:
        lines.append(' '.join([str(v) for v in clause.to_dimacs()] + ['0']))
    return '\n'.join(lines) + '\n'
