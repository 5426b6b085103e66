"""An Angle trait that accepts expressions in pi
"""
#-----------------------------------------------------------------------------
# Imports
#-----------------------------------------------------------------------------

from traitlets import Float, TraitError
from traitlets.utils.descriptions import class_of

from .stringangles import str_to_angle

__all__ = ['Angle']

#-----------------------------------------------------------------------------
# Classes
#-----------------------------------------------------------------------------


class Angle(Float):
    '''A float trait in radians.

    Besides numbers it takes strings such as "0.5*pi" or "-pi/2", both from
    the command line and from config files.
    '''
    info_text = 'an angle in radians (a number or an expression in pi)'

    def validate(self, obj, value):
        if isinstance(value, str):
            try:
                value = str_to_angle(value)
            except ValueError as e:
                raise TraitError(
                    "The '{name}' trait of {class_of} must be an angle, like "
                    "0.5 or 0.5*pi, but {value!r} was specified: {error}".format(
                        name=self.name, class_of=class_of(obj), value=value, error=e))
        return super(Angle, self).validate(obj, value)

    def from_string(self, s):
        if self.allow_none and s == 'None':
            return None
        # parsed in validate, so that file and command line share the errors
        return s
