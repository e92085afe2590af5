"""
File for saving and loading divergence reports as JSON documents
Author: ctreepy developers
"""
import json
import logging
import os

from .counterexample import SCHEMA_VERSION

class ReportFile(object):
    """
    A JSON divergence report reader and writer.

    The document holds `schema_version`, the compared inputs, the step 3
    mode and one entry per divergence.

    Attributes
    ----------
    filepath : :obj:`str`
        The full path to the .json file associated with this reader/writer.
    """
    def __init__(self, filepath):
        """Construct and initialize a .json report reader and writer.

        Raises
        ------
        ValueError
            If the file extension is not .json.
        """
        self.filepath_ = filepath
        file_root, file_ext = os.path.splitext(self.filepath_)
        if file_ext.lower() != '.json':
            raise ValueError('Extension %s invalid for reports' %(file_ext))

    @property
    def filepath(self):
        """:obj:`str` : The full path to the report file. """
        return self.filepath_

    def read(self):
        """Reads the document back as a dictionary.

        Raises
        ------
        ValueError
            If the schema version is not supported.
        """
        with open(self.filepath_, 'r') as f:
            doc = json.load(f)
        if doc.get('schema_version') != SCHEMA_VERSION:
            raise ValueError('Report schema version %s not supported' %(doc.get('schema_version')))
        return doc

    def write(self, reports, inputs=None, step3_mode=None):
        """Writes divergence reports.

        Parameters
        ----------
        reports : :obj:`list` of :obj:`DivergenceReport`
            Reports in input order.
        inputs : :obj:`list` of str
            The compared inputs.
        step3_mode : str
            The step 3 mode of the run.
        """
        doc = {
            'schema_version': SCHEMA_VERSION,
            'inputs': list(inputs) if inputs is not None else [],
            'step3_mode': step3_mode,
            'divergences': [r.to_dict() for r in reports],
        }
        with open(self.filepath_, 'w') as f:
            json.dump(doc, f, indent=2, sort_keys=True)
            f.write('\n')
        logging.info('Wrote %d divergence reports to %s' %(len(reports), self.filepath_))
