#
# Copyright 2026 GeomInt developers
#
# ### MIT license
#
# See LICENSE.md for the full license text.
#

"""
Version of the package, taken from the first source that knows it:
git describe (made PEP 440 compliant), a PKG-INFO file of a source
distribution, or the metadata of an installed distribution.
"""

import subprocess


class CannotDiscoverVersion(Exception):
    pass


def version_from_git():
    try:
        described = subprocess.run(["git", "describe", "--tags", "--dirty", "--always"],
                                   stdout=subprocess.PIPE, stderr=subprocess.DEVNULL)
    except OSError:
        raise CannotDiscoverVersion("git is not available")
    if described.returncode != 0:
        raise CannotDiscoverVersion("git describe failed")
    return pep440(described.stdout.decode("latin-1").strip())


def pep440(described):
    """'v1.2-3-gabc-dirty' -> '1.2.dev3+gabc.dirty'"""
    dirty = described.endswith("-dirty")
    version = described[:-len("-dirty")] if dirty else described
    version = version.lstrip("v").replace("-", ".dev", 1).replace("-", "+", 1)
    return version + ".dirty" if dirty else version


def version_from_pkg_info(path="PKG-INFO"):
    try:
        with open(path) as fh:
            for line in fh:
                if line.startswith("Version:"):
                    return line[len("Version:"):].strip()
    except FileNotFoundError:
        raise CannotDiscoverVersion("no {} file".format(path))
    raise CannotDiscoverVersion("{} has no Version line".format(path))


def version_from_metadata(distribution):
    from importlib.metadata import PackageNotFoundError, version
    try:
        return version(distribution)
    except PackageNotFoundError:
        raise CannotDiscoverVersion("{} is not installed".format(distribution))


def discover_version(distribution=__name__.split(".")[0]):
    for source in (version_from_git, version_from_pkg_info, lambda: version_from_metadata(distribution)):
        try:
            return source()
        except CannotDiscoverVersion:
            pass
    raise CannotDiscoverVersion("tried git, PKG-INFO and the installed metadata")


__version__ = discover_version()
