"""Parse angles from strings like "0.5*pi" or "-pi/2"

The function str_to_angle evaluates a small arithmetic expression in which
the only names are pi and tau.
"""
#-----------------------------------------------------------------------------
# Imports
#-----------------------------------------------------------------------------

import ast
import math

__all__ = ['str_to_angle']

#-----------------------------------------------------------------------------
# Globals
#-----------------------------------------------------------------------------

ANGLE_NAMES = {'pi': math.pi, 'tau': 2 * math.pi}

#-----------------------------------------------------------------------------
# Functions
#-----------------------------------------------------------------------------


class _AngleContext(ast.NodeTransformer):

    '''Node transformer that checks an angle expression and replaces the
    names pi and tau by their values. See str_to_angle for how this is used.
    '''
    # only arithmetic on numbers and the two names may appear
    allowed_ops = [ast.Expression, ast.BinOp, ast.UnaryOp, ast.Name, ast.Constant,
                   ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow, ast.USub, ast.UAdd]

    def visit(self, node):
        if not any(isinstance(node, a) for a in self.allowed_ops):
            raise ValueError('Invalid angle expression. Contains disallowed '
                             'operation %s' % node.__class__.__name__)
        return super(_AngleContext, self).visit(node)

    def visit_Constant(self, node):
        value = node.value
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ValueError('%r is not a number' % (value,))
        # floats keep 9**9**9 from turning into a huge integer
        return ast.copy_location(ast.Constant(value=float(value)), node)

    def visit_Name(self, node):
        if node.id not in ANGLE_NAMES:
            raise ValueError('%s is not a valid angle name, use pi or tau' % node.id)
        return ast.copy_location(ast.Constant(value=ANGLE_NAMES[node.id]), node)


_angle_context = _AngleContext()  # global instance of the visitor


def str_to_angle(angle_string):
    '''Evaluate an angle expression in radians.

    Parameters
    ----------
    angle_string : str
        A number, or an expression with + - * / ** built from numbers, pi
        and tau.

    Examples
    --------
    >>> str_to_angle('0.5*pi') == math.pi / 2
    True
    >>> str_to_angle('-pi/2') == -math.pi / 2
    True
    >>> str_to_angle('1.25')
    1.25
    '''
    try:
        node = _angle_context.visit(ast.parse(angle_string.strip(), mode='eval'))
    except SyntaxError:
        raise ValueError('could not parse %r as an angle' % (angle_string,))
    fixed_node = ast.fix_missing_locations(node)
    try:
        output = float(eval(compile(fixed_node, '<angle>', mode='eval'),
                            {'__builtins__': {}}, {}))
    except (ArithmeticError, TypeError, ValueError) as e:
        raise ValueError('could not evaluate %r: %s' % (angle_string, e))

    if not math.isfinite(output):
        raise ValueError('%r is not a finite angle' % (angle_string,))
    return output
