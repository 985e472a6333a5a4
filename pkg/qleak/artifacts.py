"""
Writers for experiment outputs: CSV tables and the JSON manifest that
records the resolved configuration, fitted results and failures.
"""
import csv
import json
import os

from qleak import __version__
from qleak.utils import format_value, generate_digest, json_default

CSV_VERSION = 'v1'


def _csv_banner(name):
    """First line of every table."""
    return '# qleak %s csv %s' % (name, CSV_VERSION)


def read_table(path):
    """
    Read a table written by ArtifactWriter.

    :path: CSV path
    :returns: (header, rows) with cells as strings
    :raises: ValueError if the banner line is missing
    """
    with open(path, 'rt', newline='') as in_file:
        banner = in_file.readline().rstrip('\r\n')
        if not banner.startswith('# qleak ') or \
                not banner.endswith(' csv %s' % CSV_VERSION):
            raise ValueError("Not a qleak table: %s" % path)
        reader = csv.reader(in_file)
        header = next(reader)
        rows = [row for row in reader]
    return header, rows


class ArtifactWriter(object):
    """
    Collects the tables, results and failures of one experiment run and
    writes them into the output directory.
    """

    def __init__(self, out_dir, name):
        """
        :out_dir: Output directory, created if missing
        :name: Experiment name used in file names
        """
        self.out_dir = out_dir
        self.name = name
        self.files = []
        self.results = {}
        self.failures = []
        if not os.path.isdir(out_dir):
            os.makedirs(out_dir)

    def path(self, table=None, suffix='csv'):
        """Output path of the main table or of an extra table."""
        stem = self.name if table is None else '%s-%s' % (self.name, table)
        return os.path.join(self.out_dir, '%s.%s' % (stem, suffix))

    def add_file(self, path):
        """Register a file written outside the writer."""
        basename = os.path.basename(path)
        if basename not in self.files:
            self.files.append(basename)

    def write_table(self, header, rows, table=None):
        """
        Write a CSV table.

        :header: Column names
        :rows: Iterable of rows
        :table: None for the main table, else the extra table name
        :returns: Path of the written file
        """
        filename = self.path(table)
        with open(filename, 'wt', newline='') as out_file:
            out_file.write(_csv_banner(self.name) + '\n')
            writer = csv.writer(out_file, lineterminator='\n')
            writer.writerow(header)
            for row in rows:
                if len(row) != len(header):
                    raise ValueError(
                        "Row %r does not match header %r" % (row, header))
                writer.writerow([format_value(value) for value in row])
        self.add_file(filename)
        print("Wrote %s table to file %s" % (self.name, filename))
        return filename

    def add_result(self, key, value):
        """Store a result reported in the manifest."""
        self.results[key] = value

    def add_failure(self, point, message):
        """Record a sweep point that could not be computed."""
        print("Failed at %s: %s" % (point, message))
        self.failures.append({'point': point, 'message': str(message)})

    def write_manifest(self, config, seed):
        """
        Write ``<name>.manifest.json``.

        :config: Fully resolved configuration
        :seed: Master seed of the run
        :returns: Path of the manifest
        """
        filename = self.path(suffix='manifest.json')
        manifest = {
            'name': self.name,
            'version': __version__,
            'config': config,
            'config_digest': generate_digest(config),
            'seed': seed,
            'results': self.results,
            'files': self.files,
            'failures': self.failures
        }
        with open(filename, 'wt') as out_file:
            json.dump(manifest, out_file, indent=2, sort_keys=True,
                      default=json_default)
            out_file.write('\n')
        print("Wrote %s manifest to file %s" % (self.name, filename))
        return filename
