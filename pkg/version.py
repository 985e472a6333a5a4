"""
Gets the current version number of qleak.
If in a git repository, it is the current git tag.
Otherwise it is the one contained in the PKG-INFO file, and failing that
the version of the qleak package itself.

To use this script, simply import it in your setup.py file
and use the results of get_version() as your package version:

    from version import get_version

    setup(
        ...
        version=get_version(),
        ...
    )
"""

__all__ = ('get_version',)

import os.path
import re
from subprocess import PIPE, Popen

VERSION_RE = re.compile('^Version: (.+)$', re.M)
PACKAGE_VERSION_RE = re.compile(r"^__version__ = '([^']+)'$", re.M)


def call_git_describe():
    """Latest v-prefixed tag with commit count and hash, or empty."""
    cmd = 'git describe --abbrev --tags --match v[0-9]*'.split()
    try:
        process = Popen(cmd, stdout=PIPE, stderr=PIPE)
    except OSError:
        return ''
    stdout, _ = process.communicate()
    return stdout.strip().decode('utf-8')


def package_version(directory):
    """Version string of qleak/__init__.py."""
    with open(os.path.join(directory, 'qleak', '__init__.py')) as in_file:
        return PACKAGE_VERSION_RE.search(in_file.read()).group(1)


def write_pkg_info(directory):
    """Write a minimal PKG-INFO with the package version."""
    filename = os.path.join(directory, 'PKG-INFO')
    if os.path.isfile(filename):
        return
    print("{}: Writing version info to '{}'...".format(__file__, filename))
    with open(filename, 'w') as out_file:
        out_file.write("Metadata-Version: 1.0\n")
        out_file.write("Name: qleak\n")
        out_file.write("Version: %s\n" % package_version(directory))
        out_file.write("Summary: Qutrit leakage simulations\n")


def get_version():
    """Version from git tags, else from PKG-INFO."""
    directory = os.path.dirname(os.path.abspath(__file__))

    if os.path.isdir(os.path.join(directory, '.git')):
        version_git = call_git_describe()
        if version_git:
            # PEP 440: v1.2-3-gabc -> 1.2.post3+gabc
            parts = version_git.lstrip('v').split('-')
            version = parts[0]
            if len(parts) > 2:
                version = "%s.post%s+%s" % (parts[0], parts[1], parts[2])
            print("Version number from GIT repository: {}".format(version))
            return version

    write_pkg_info(directory)
    with open(os.path.join(directory, 'PKG-INFO')) as in_file:
        version = VERSION_RE.search(in_file.read()).group(1)
    print("Version number from PKG-INFO: {}".format(version))
    return version


if __name__ == '__main__':
    print(get_version())
