"""Single entry point exposing every experiment tool as a subcommand."""
import sys

import click

from qleak import __version__
from qleak.scripts import (calibrate, decay_rates, detune_sweep, drag2_scan,
                           heating, leakage_vs_alpha, leakage_vs_length, rb,
                           tomography)

COMMANDS = (rb, leakage_vs_alpha, leakage_vs_length, heating, detune_sweep,
            tomography, drag2_scan, decay_rates, calibrate)


@click.group()
@click.version_option(version=__version__, prog_name='qleak')
def main():
    """Simulate leakage and gate errors of a driven transmon qutrit."""


for _module in COMMANDS:
    _name = _module.__name__.rsplit('.', 1)[-1]
    main.add_command(_module.main, name=_name.replace('_', '-'))


if __name__ == '__main__':
    RETVAL = main()  # pylint: disable=no-value-for-parameter
    sys.exit(RETVAL)
