"Utility functions and exceptions for nntensor."

import re


# Exceptions

class NNTensorError( Exception ):
    "Base class for every error raised by nntensor."


class ArgumentError( NNTensorError, ValueError ):
    """Malformed argument: dimension mismatch, negative or non-finite
       entry, nonpositive scaling, unknown name."""


class ParseError( ArgumentError ):
    "Syntax error in tensor text, tagged with its 1-based line number."

    def __init__( self, lineno, msg ):
        ArgumentError.__init__( self, 'line %d: %s' % ( lineno, msg ) )
        self.lineno = lineno


class PreconditionError( NNTensorError ):
    """A mathematical precondition does not hold, e.g. a zero row sum
       after the shift or a constant-row-sum state."""


class ResourceError( NNTensorError ):
    "A size cap (memory or subset enumeration) would be exceeded."


# Argument string support

def checkInt( s ):
    "Check if input string is an int"
    try:
        int( s )
        return True
    except ValueError:
        return False

def checkFloat( s ):
    "Check if input string is a float"
    try:
        float( s )
        return True
    except ValueError:
        return False

def makeNumeric( s ):
    "Convert string to int or float if numeric."
    if checkInt( s ):
        return int( s )
    elif checkFloat( s ):
        return float( s )
    else:
        return s

def splitArgs( argstr ):
    """Split argument string into usable python arguments
       argstr: argument string with format fn,arg2,kw1=arg3...
       returns: fn, args, kwargs"""
    split = argstr.split( ',' )
    fn = split[ 0 ]
    params = split[ 1: ]
    # Convert int and float args; removes the need for function
    # to be flexible with input arg formats.
    args = [ makeNumeric( s ) for s in params if '=' not in s ]
    kwargs = {}
    for s in [ p for p in params if '=' in p ]:
        key, val = s.split( '=', 1 )
        kwargs[ key ] = makeNumeric( val )
    return fn, args, kwargs

def buildTensor( tensors, tensorStr, **params ):
    """Create tensor from string with format (name, arg1, key=val,...).
       tensors: dict of generator names to constructors
       params: defaults (m, n, seed...) overridden by the string
       returns: DenseTensor"""
    name, args, kwargs = splitArgs( tensorStr )
    if name not in tensors:
        raise ArgumentError( 'Invalid tensor kind %s - please specify one '
                             'of %s' % ( name, sorted( tensors ) ) )
    params = dict( params )
    params.update( kwargs )
    try:
        return tensors[ name ]( *args, **params )
    except TypeError as e:
        raise ArgumentError( 'bad arguments for tensor kind %s: %s' %
                             ( name, e ) )


# Formatting

def irange( start, end ):
    """Inclusive range from start to end (vs. Python insanity.)
       irange(1,5) -> 1, 2, 3, 4, 5"""
    return range( start, end + 1 )

def sigfig( value, digits=6 ):
    "Format value with the given number of significant digits."
    return '%.*g' % ( digits, value )

def fmtVector( values, digits=6 ):
    "Format a vector as ( v1, v2, ... ) with significant digits."
    return '( %s )' % ', '.join( sigfig( v, digits ) for v in values )

def fmtSubset( subset ):
    "Format a 1-based index subset as {1,2}."
    return '{%s}' % ','.join( str( i ) for i in sorted( subset ) )

def natural( text ):
    "To sort sanely/alphabetically: sorted( l, key=natural )"
    def num( s ):
        "Convert text segment to int if necessary"
        return int( s ) if s.isdigit() else s
    return [ num( s ) for s in re.split( r'(\d+)', str( text ) ) ]
