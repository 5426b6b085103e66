"""Load flat JSON config files in the traitlets config system.

A config file is one JSON object. Nested objects are flattened with '.', so
{"port1": {"alpha": {"magnitude": 1}}} and {"port1.alpha.magnitude": 1} are
the same file. Every flat key names one trait of one section, see
config_target.
"""
#-----------------------------------------------------------------------------
# Imports
#-----------------------------------------------------------------------------

import json

from traitlets.config.loader import Config, ConfigError, ConfigFileNotFound, FileConfigLoader

__all__ = ['JsonConfigError', 'FlatJsonConfigLoader', 'config_target', 'flatten',
           'key_config']

#-----------------------------------------------------------------------------
# Globals
#-----------------------------------------------------------------------------

# keys whose section and trait cannot be read off the key itself
SPECIAL_KEYS = {
    'port1.alpha.magnitude': ('Port1', 'alpha_magnitude'),
    'port1.alpha.phase': ('Port1', 'alpha_phase'),
    'port1.zeta.factor': ('Port1', 'zeta_factor'),
    'port1.zeta.phase': ('Port1', 'zeta_phase'),
    'port0.beta.magnitude': ('Port0', 'beta_magnitude'),
    'port0.beta.phase': ('Port0', 'beta_phase'),
    'port0.xi.factor': ('Port0', 'xi_factor'),
    'port0.xi.phase': ('Port0', 'xi_phase'),
    'convention': ('Interferometer', 'convention'),
    'phase': ('Interferometer', 'phase'),
    'efficiency': ('Interferometer', 'efficiency'),
    'pmc': ('Interferometer', 'pmc'),
    'scheme': ('Detection', 'scheme'),
    'local_phase': ('Detection', 'local_phase'),
    'shots': ('Detection', 'shots'),
}

#-----------------------------------------------------------------------------
# Classes
#-----------------------------------------------------------------------------


class JsonConfigError(ConfigError):
    """A config file or override that cannot be used.

    Attributes
    ----------
    lineno : int or None
        Line of the file where the problem is, when known.
    field : str or None
        The offending flat key.
    """
    def __init__(self, message, filename=None, lineno=None, field=None):
        self.reason = message
        self.filename = filename
        self.lineno = lineno
        self.field = field
        where = []
        if filename:
            where.append(filename)
        if lineno is not None:
            where.append('line %d' % lineno)
        if field:
            where.append('field %r' % field)
        if where:
            message = '%s: %s' % (', '.join(where), message)
        super(JsonConfigError, self).__init__(message)


class FlatJsonConfigLoader(FileConfigLoader):
    """Load configuration files from flat JSON objects.

    Parameters
    ----------
    filename : str
    path : str or list, optional
        Directories to search for filename.
    known_traits : dict, optional
        Section name -> set of trait names. When given, keys that name
        anything else are rejected.
    """
    def __init__(self, filename, path=None, known_traits=None, **kw):
        super(FlatJsonConfigLoader, self).__init__(filename, path=path, **kw)
        self.known_traits = known_traits

    def load_config(self):
        """Load the config from a file and return it as a Config."""
        self.clear()
        try:
            self._find_file()
        except IOError as e:
            raise ConfigFileNotFound(str(e))
        self._read_file_as_config()

        return self.config

    def _read_file_as_config(self):
        with open(self.full_filename) as f:
            text = f.read()

        try:
            data = json.loads(text)
        except ValueError as e:
            raise JsonConfigError('malformed JSON: %s' % e.msg, filename=self.full_filename,
                                  lineno=getattr(e, 'lineno', None))
        if not isinstance(data, dict):
            raise JsonConfigError('a config file must hold a JSON object',
                                  filename=self.full_filename, lineno=1)

        for key, value in flatten(data):
            try:
                self.config.merge(key_config(key, value, self.known_traits))
            except JsonConfigError as e:
                raise JsonConfigError(e.reason, filename=self.full_filename,
                                      lineno=_find_line(text, key), field=key)

#-----------------------------------------------------------------------------
# Functions
#-----------------------------------------------------------------------------


def _find_line(text, key):
    """Line of the first occurrence of the last component of key."""
    needle = '"%s"' % key.rsplit('.', 1)[-1]
    for lineno, line in enumerate(text.splitlines(), 1):
        if needle in line:
            return lineno
    return None


def flatten(data, prefix=''):
    """Yield (flat key, value) pairs of a nested dict.

    Examples
    --------
    >>> list(flatten({'port1': {'alpha': {'magnitude': 1.0}}, 'phase': 0.5}))
    [('port1.alpha.magnitude', 1.0), ('phase', 0.5)]
    """
    for key, value in data.items():
        name = prefix + key
        if isinstance(value, dict):
            for item in flatten(value, name + '.'):
                yield item
        else:
            yield name, value


def config_target(key):
    """The (section, trait) a flat key configures.

    Examples
    --------
    >>> config_target('port0.xi.factor'), config_target('sweep.axis')
    (('Port0', 'xi_factor'), ('Sweep', 'axis'))
    """
    if key in SPECIAL_KEYS:
        return SPECIAL_KEYS[key]
    section, _, trait = key.partition('.')
    if not section or not trait or '.' in trait:
        raise JsonConfigError('unknown config key', field=key)
    return section.capitalize(), trait


def key_config(key, value, known_traits=None):
    """A Config holding one flat key."""
    section, trait = config_target(key)
    if known_traits is not None:
        if trait not in known_traits.get(section, ()):
            raise JsonConfigError('unknown config key', field=key)
    config = Config()
    config[section][trait] = value
    return config
