"""
Two base classes used by the gaussmzi command line script. The first,
AppConfigurable, is a traitlets Configurable that adds stricter error
checking (unknown keys are an error, not a warning), a record of which traits
were set explicitly and a validate() hook for checks that involve more than
one trait.

The second class, MziApplication, is a traitlets Application customized for
gaussmzi: the config file comes from a --config flag instead of a profile
directory, --set key=value overrides sit between the file and the command
line, every error exits with status 2, and the classes holding the detailed
configuration are instantiated automatically into same-named traits.
"""
#-----------------------------------------------------------------------------
# Imports
#-----------------------------------------------------------------------------

import logging
import os
import sys

from traitlets import Instance, List, TraitError, default
from traitlets.config import Application, Configurable
from traitlets.config.loader import ConfigError

from .json_loader import FlatJsonConfigLoader
from .override_loader import OverrideLoader

__all__ = ['LevelFormatter', 'MziApplication', 'AppConfigurable']

#-----------------------------------------------------------------------------
# Classes
#-----------------------------------------------------------------------------


class LevelFormatter(logging.Formatter, object):
    """Formatter that fills a `highlevel` field on each record.

    Records at highlevel_limit or above get `highlevel_format` (" WARNING |"),
    quieter ones get an empty string, so progress lines stay untagged. The
    tag is coloured on a terminal unless NO_COLOR is set.
    """
    highlevel_limit = logging.WARN
    highlevel_format = " %(levelname)s |"
    colors = {logging.WARN: '\033[33m', logging.ERROR: '\033[31m', logging.CRITICAL: '\033[1;31m'}

    @staticmethod
    def use_color():
        if os.environ.get('NO_COLOR'):
            return False
        isatty = getattr(sys.stderr, 'isatty', None)
        return bool(isatty and isatty())

    def format(self, record):
        if record.levelno >= self.highlevel_limit:
            highlevel = self.highlevel_format % record.__dict__
            if self.use_color():
                color = self.colors.get(record.levelno, self.colors[logging.ERROR])
                highlevel = '%s%s\033[0m' % (color, highlevel)
            record.highlevel = highlevel
        else:
            record.highlevel = ""

        return super(LevelFormatter, self).format(record)


class MziApplication(Application):
    """Baseclass for the gaussmzi commands, with the methods for loading
    the config file and instantiating the config sections (boring stuff)
    """
    name = 'gaussmzi'
    classes = []
    configured_classes = List()

    # every section a config file may mention, also the ones this command
    # does not use, so one file can drive all commands
    known_sections = ()

    _log_formatter_cls = LevelFormatter

    aliases = {'log-level': 'Application.log_level'}

    def get_default_logging_config(self):
        """Also route the library's own loggers through our handler."""
        config = super(MziApplication, self).get_default_logging_config()
        config['loggers']['mzi'] = {'level': 'DEBUG', 'handlers': ['console'],
                                    'propagate': False}
        return config

    def known_traits(self):
        if not self.known_sections:
            return None
        return {cls.__name__: set(cls.class_trait_names(config=True))
                for cls in self.known_sections}

    def initialize(self, argv=None):
        '''Do the first steps to configure the application: the config file,
        then the --set overrides, then the command line, so that each beats
        the one before.'''
        argv = sys.argv[1:] if argv is None else list(argv)
        if self.subcommands and argv and argv[0] in self.subcommands:
            return self.initialize_subcommand(argv[0], argv[1:])

        try:
            overrides = OverrideLoader(argv, self.known_traits())
            override_config = overrides.load_config()
            self.config_file_path = overrides.config_file
            if self.config_file_path:
                self.load_config_file(self.config_file_path)
            self.update_config(override_config)

            self.parse_command_line(overrides.extra_args)
            if self.extra_args:
                self.error('unrecognized arguments: %s' % ' '.join(self.extra_args))

            self.initialize_configured_classes()
            self.validate()
        except (TraitError, ConfigError) as e:
            self.error(e)

    def initialize_configured_classes(self):
        for klass in self.classes:
            if not issubclass(klass, AppConfigurable):
                continue
            traitname = klass.__name__.lower()
            self.log.debug('Initializing %s options from config/command line.', traitname)
            trait = self.traits().get(traitname)
            if trait is None:
                raise AttributeError(
                    'To use initialize_configured_classes, the application needs an '
                    'Instance trait named %s to hold the %s section' % (traitname, klass.__name__))

            if not isinstance(trait, Instance):
                raise AttributeError("%s needs to be an Instance trait" % traitname)

            instantiated = klass(application=self, config=self.config)
            self.configured_classes.append(instantiated)
            setattr(self, traitname, instantiated)

    def validate(self):
        for cls in self.configured_classes:
            cls.validate()

    def effective_config(self):
        """Trait values of every configured section, for output headers."""
        return {cls.__class__.__name__: cls.trait_values(config=True)
                for cls in self.configured_classes}

    def load_config_file(self, filename, path=None):
        """Load a flat JSON config file by filename and path."""
        loader = FlatJsonConfigLoader(filename, path=path, known_traits=self.known_traits(),
                                      log=self.log)
        config = loader.load_config()
        self.log.debug("Loaded config file: %s", loader.full_filename)
        self.update_config(config)

    def error(self, message=None):
        "Error out with a message"
        if message:
            self.log.error(str(message))
            sys.stderr.write('\nTo see all available configurables, use `--help-all`\n')
        sys.exit(2)

    def exit(self, exit_status=0):
        # traitlets reports bad options with status 1; all config errors are 2
        if exit_status == 1:
            exit_status = 2
        self.log.debug("Exiting application: %s", self.name)
        sys.exit(exit_status)


class AppConfigurable(Configurable):

    """One section of the gaussmzi configuration (Port1, Sweep, ...).

    A key the section does not know is a configuration error. validate() runs
    after every section is built and reports problems through fail().
    """
    application = Instance('ipcfg.mziapplication.MziApplication')

    log = Instance('logging.Logger')

    @default('log')
    def _log_default(self):
        return self.application.log

    @default('application')
    def _application_default(self):
        return MziApplication.instance()

    specified_config_traits = List(help='''Sorted names of the traits of this
        section that some config source set explicitly instead of leaving
        them at their defaults.''')

    def __init__(self, application=None, config=None):
        name = self.__class__.__name__
        application = application or MziApplication.instance()
        section = config[name] if config is not None and name in config else {}
        for key in section:
            if key not in self.class_trait_names(config=True):
                application.error('%s has no configurable trait %s' % (name, key))

        super(AppConfigurable, self).__init__(application=application, config=config)
        self.specified_config_traits = sorted(section)

    def validate(self):
        """Cross-field checks; the default accepts everything."""
        pass

    def fail(self, message):
        """Report a validation failure for this section."""
        self.application.error('[%s] %s' % (self.__class__.__name__, message))
