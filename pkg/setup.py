"""
Install qleak
"""

import os
from setuptools import setup, find_packages
from version import get_version


def scripts_list():
    """Return list of command line tools from package qleak.scripts"""
    scripts = ['qleak = qleak.cli:main']
    for modulename in sorted(os.listdir('qleak/scripts')):
        if modulename.startswith('_'):
            continue
        if not modulename.endswith('.py'):
            continue
        modulename = modulename.replace('.py', '')
        scriptname = 'qleak-' + modulename.replace('_', '-')
        scripts.append(
            '%s = qleak.scripts.%s:main' % (scriptname, modulename)
        )
    print(scripts)
    return scripts


def main():
    """Install qleak"""
    setup(
        name='qleak',
        packages=find_packages(exclude=['tests', 'tests.*']),
        include_package_data=True,
        version=get_version(),
        python_requires='>=3.8',
        install_requires=[
            "numpy>=1.20",
            "scipy>=1.9",
            "click"
        ],
        entry_points={'console_scripts': scripts_list()}

    )


if __name__ == '__main__':
    main()
