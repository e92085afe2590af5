"""
File for loading and saving 3-CNF formulas from .cnf DIMACS files
Author: ctreepy developers
"""
import logging
import os

from . import cnf

class DimacsFile(object):
    """
    A DIMACS .cnf file reader and writer.

    Attributes
    ----------
    filepath : :obj:`str`
        The full path to the .cnf file associated with this reader/writer.
    """
    def __init__(self, filepath):
        """Construct and initialize a .cnf file reader and writer.

        Parameters
        ----------
        filepath : :obj:`str`
            The full path to the desired .cnf file

        Raises
        ------
        ValueError
            If the file extension is not .cnf or .dimacs.
        """
        self.filepath_ = filepath
        file_root, file_ext = os.path.splitext(self.filepath_)
        if file_ext.lower() not in ['.cnf', '.dimacs']:
            raise ValueError('Extension %s invalid for DIMACS files' %(file_ext))

    @property
    def filepath(self):
        """Returns the full path to the .cnf file associated with this reader/writer.

        Returns
        -------
        :obj:`str`
            The full path to the .cnf file associated with this reader/writer.
        """
        return self.filepath_

    def read(self):
        """Reads in the .cnf file and returns a Formula.

        Returns
        -------
        :obj:`Formula`
            A Formula created from the data in the .cnf file, including the
            variable names given by `c name` comments.

        Raises
        ------
        DimacsError
            If the file does not hold a 3-CNF formula.
        """
        with open(self.filepath_, 'r') as f:
            text = f.read()
        formula = cnf.parse_dimacs(text)
        logging.info('Read %s: %d variables, %d clauses' %(self.filepath_, formula.num_variables, formula.num_clauses))
        return formula

    def write(self, formula, comments=None):
        """Writes a Formula out to the .cnf file format.

        Parameters
        ----------
        formula : :obj:`Formula`
            The formula to write.
        comments : :obj:`list` of :obj:`str`
            Free text lines written as `c` comments ahead of the name table.
            They are not read back.

        Raises
        ------
        ValueError
            If a comment spans lines or would read back as a name comment.
        """
        comments = list(comments) if comments is not None else []
        for comment in comments:
            tokens = comment.split()
            if '\n' in comment or '\r' in comment or (len(tokens) > 0 and tokens[0] == 'name'):
                raise ValueError('Comment %r cannot be written as a free text line' %(comment))
        text = cnf.serialize_dimacs(formula)
        with open(self.filepath_, 'w') as f:
            for comment in comments:
                f.write('c %s\n' %(comment))
            f.write(text)
        logging.info('Wrote %s' %(self.filepath_))
