#-----------------------------------------------------------------------------
# Imports
#-----------------------------------------------------------------------------
# stdlib
import csv
import io
import json
import os
import shutil
import sys
import tempfile

#-----------------------------------------------------------------------------
# Globals
#-----------------------------------------------------------------------------

__all__ = ['CsvReporter', 'format_value', 'CSV_FORMAT_VERSION']

CSV_FORMAT_VERSION = 1

#-----------------------------------------------------------------------------
# Utilities
#-----------------------------------------------------------------------------


def format_value(value):
    """Render one CSV cell; floats get 12 significant digits.

    Examples
    --------
    >>> format_value(1 / 3), format_value(7), format_value(float('inf')), format_value(True)
    ('0.333333333333', '7', 'inf', '1')
    """
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, float):
        return '%.12g' % value
    return str(value)

#-----------------------------------------------------------------------------
# Classes
#-----------------------------------------------------------------------------


class CsvReporter(object):
    """CsvReporter collects rows and writes them as one CSV file.

    The first line records the format version and the full effective config
    as sorted JSON, then come any extra comment lines, the header row and
    the data rows. Writing to a path goes through a temporary file that is
    moved into place, so a reader never sees half a table; ``'-'`` writes to
    standard output.
    """

    def __init__(self, fileName, columns, config=None, comments=()):
        """Create a CsvReporter.

        Parameters
        ----------
        fileName : str
            Destination path, or '-' for standard output.
        columns : list of str
            Header row.
        config : dict
            Effective configuration, recorded in the first line.
        comments : iterable of str
            Extra lines, written after the config line with a '# ' prefix.
        """
        self._fileName = fileName
        self._columns = list(columns)
        self._config = config or {}
        self._comments = list(comments)
        self._rows = []

    def comment(self, line):
        self._comments.append(line)

    def report(self, row):
        """Add one row, a sequence with one value per column."""
        row = list(row)
        if len(row) != len(self._columns):
            raise ValueError('row has %d values but there are %d columns'
                             % (len(row), len(self._columns)))
        self._rows.append(row)

    def render(self):
        out = io.StringIO()
        out.write('# gaussmzi-csv %d %s\n' % (
            CSV_FORMAT_VERSION, json.dumps(self._config, sort_keys=True, separators=(',', ':'))))
        for line in self._comments:
            out.write('# %s\n' % line)
        writer = csv.writer(out, lineterminator='\n')
        writer.writerow(self._columns)
        for row in self._rows:
            writer.writerow([format_value(v) for v in row])
        return out.getvalue()

    def write(self):
        """Write the table to its destination."""
        text = self.render()
        if self._fileName == '-':
            sys.stdout.write(text)
            sys.stdout.flush()
            return

        # Write the new file to a temporary file, then move
        # it to the proper location
        directory = os.path.dirname(os.path.abspath(self._fileName))
        tmp_fd, tmp_fn = tempfile.mkstemp(dir=directory, suffix='.csv.tmp')
        try:
            with os.fdopen(tmp_fd, 'w', newline='') as f:
                f.write(text)
        except BaseException:
            os.remove(tmp_fn)
            raise

        try:
            shutil.move(tmp_fn, self._fileName)
        except OSError:
            # Unix will overwrite the existing file silently if the user
            # has permission. On windows, OSError will be raised
            os.remove(self._fileName)
            shutil.move(tmp_fn, self._fileName)
