"""Pull --config and --set out of argv before traitlets sees it.
"""
#-----------------------------------------------------------------------------
# Imports
#-----------------------------------------------------------------------------

import argparse
import json

from traitlets.config.loader import ArgumentError, Config

from .json_loader import JsonConfigError, key_config

__all__ = ['OverrideLoader']

#-----------------------------------------------------------------------------
# Classes
#-----------------------------------------------------------------------------


class _OverrideParser(argparse.ArgumentParser):
    def error(self, message):
        raise ArgumentError(message)


class OverrideLoader(object):
    """Split argv into the config file path, the ``--set key=value``
    overrides and everything else.

    Values are read as JSON when they parse as JSON and kept as strings
    otherwise, so ``--set phase=0.5*pi`` and ``--set sweep.steps=50`` both
    do what they look like.

    Examples
    --------
    >>> loader = OverrideLoader(['--config=a.json', '--set', 'shots=4', '--axis=beta'])
    >>> loader.config_file, loader.extra_args
    ('a.json', ['--axis=beta'])
    >>> loader.load_config()['Detection']['shots']
    4
    """
    def __init__(self, argv, known_traits=None):
        parser = _OverrideParser(add_help=False, allow_abbrev=False)
        parser.add_argument('--config', dest='config_file', default='')
        parser.add_argument('--set', dest='overrides', action='append', default=[])

        known_args, extra_args = parser.parse_known_args(list(argv))
        self.config_file = known_args.config_file
        self.overrides = known_args.overrides
        self.extra_args = extra_args
        self.known_traits = known_traits

    def load_config(self):
        config = Config()
        for item in self.overrides:
            key, sep, raw = item.partition('=')
            key = key.strip()
            if not sep or not key:
                raise JsonConfigError('--set expects key=value, got %r' % item, field=key or None)
            try:
                value = json.loads(raw)
            except ValueError:
                value = raw
            config.merge(key_config(key, value, self.known_traits))
        return config
