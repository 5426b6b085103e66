"""gaussmzi: phase sensitivity of a Mach-Zehnder interferometer with squeezed coherent inputs

Closed-form quantum Fisher information, quantum Cramer-Rao bound and
detection-scheme sensitivities for a Mach-Zehnder interferometer whose two
input ports each carry a squeezed coherent state, with imperfect detectors,
the phase-matching conditions that maximize the QFI, their regime
boundaries and large photon number limit, and a truncated Fock-space
simulation that checks the closed forms.

To install this package, run `pip install .`. The dependencies are numpy,
scipy and traitlets.

For the short help, run `gaussmzi -h`. To get help on all available options,
run `gaussmzi <command> --help-all`.
"""
DOCLINES = __doc__.split("\n")

import os
from setuptools import setup

CLASSIFIERS = """\
Development Status :: 3 - Alpha
Intended Audience :: Science/Research
Programming Language :: Python :: 3
Topic :: Scientific/Engineering :: Physics
"""

NAME                = 'gaussmzi'
DESCRIPTION         = DOCLINES[0]
LONG_DESCRIPTION    = "\n".join(DOCLINES[2:])
LICENSE             = "BSD"
PLATFORMS           = ['Windows', 'Linux', 'Mac OS-X']
CLASSIFIERS         = [c for c in CLASSIFIERS.split('\n') if c]
VERSION             = '0.1'

SCRIPTS             = ['gaussmzi']
INSTALL_REQUIRES    = ['numpy', 'scipy', 'traitlets>=5.9']
EXTRAS_REQUIRE      = {'test': ['pytest']}


def find_packages(extra_exclude=None):
    """Find all python packages inside the current directory by searching
    recursively through the directory tree, looking for directories with an
    __init__.py file in them.

    Parameters
    ----------
    extra_exclude : list, set
        Extra paths to add to the exclusion list.

    Returns
    -------
    packages : list
        A list of packages

    Examples
    --------
    >>> find_packages()
    ['ipcfg', 'mzi']
    """

    exclude = set(['.git', '.svn', 'build', 'tests', 'examples'])
    if extra_exclude is not None:
        exclude = exclude.union(extra_exclude)

    packages = []
    for dirpath, dirnames, filenames in os.walk('.'):
        # prune in place so os.walk does not descend into excluded directories
        dirnames[:] = sorted(d for d in dirnames if not any(d.endswith(e) for e in exclude))

        if '__init__.py' in filenames and dirpath != '.':
            packages.append(os.path.relpath(dirpath, '.').replace(os.sep, '.'))

    return sorted(packages)


if __name__ == '__main__':
    setup(name=NAME,
          scripts=SCRIPTS,
          packages=find_packages(),
          version=VERSION,
          license=LICENSE,
          platforms=PLATFORMS,
          classifiers=CLASSIFIERS,
          install_requires=INSTALL_REQUIRES,
          extras_require=EXTRAS_REQUIRE,
          python_requires='>=3.8',
          description=DESCRIPTION,
          long_description=LONG_DESCRIPTION)
