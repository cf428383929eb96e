"""
Dense nonnegative tensors.

A DenseTensor of order m and dimension n holds n^m nonnegative real
entries a[i1,...,im], stored as a read-only numpy array of shape
(n,)*m in C (lexicographic) order.  Indices are 0-based inside numpy
and 1-based everywhere a user sees them: the text format, reports and
witnesses.

The module provides the multilinear contraction A x^{m-1}, row sums,
the identity shift B + alpha*I, diagonal similarity, seeded generators
(registered in TENSORS for the command line) and the text format:

    m n
    i1 i2 ... im value
    ...

Omitted positions are zero; a repeated index tuple is an error.
"""

from collections import namedtuple
from math import isfinite

import numpy as np

from nntensor.util import ArgumentError, ParseError, ResourceError

# Largest number of entries n^m we are willing to allocate (128MB of
# float64); individual calls may pass maxEntries to override it.
MAXENTRIES = 2 ** 24

# numpy arrays have at most 32 axes
MAXORDER = 32

EigenPair = namedtuple( 'EigenPair', 'value vector' )


def checkSize( m, n, maxEntries=None ):
    """Raise ResourceError if an order m, dimension n tensor is too big.
       returns: number of entries n^m"""
    maxEntries = MAXENTRIES if maxEntries is None else maxEntries
    if m < 2 or n < 1:
        raise ArgumentError( 'need order m >= 2 and dimension n >= 1, '
                             'got m=%s n=%s' % ( m, n ) )
    if m > MAXORDER:
        raise ResourceError( 'order m = %d is over the cap of %d axes' %
                             ( m, MAXORDER ) )
    # stop as soon as the running product passes the cap
    size = 1
    for _ in range( m ):
        size *= n
        if size > maxEntries:
            raise ResourceError( '(n,m) = (%d,%d) needs more than %d '
                                 'entries, over the cap' %
                                 ( n, m, maxEntries ) )
    return size


class DenseTensor( object ):
    "Order m, dimension n nonnegative tensor with immutable dense storage."

    def __init__( self, entries, order=None, dim=None ):
        """entries: array of shape (n,)*m, or flat array of n^m values
              in lexicographic order (then order and dim are required)
           order: tensor order m (optional for shaped input)
           dim: tensor dimension n (optional for shaped input)"""
        data = np.array( entries, dtype=float )
        if order is not None or dim is not None:
            if order is None or dim is None:
                raise ArgumentError( 'flat entries need both order and dim' )
            if data.size != dim ** order:
                raise ArgumentError( 'expected %d entries for (m,n) = '
                                     '(%d,%d), got %d' %
                                     ( dim ** order, order, dim, data.size ) )
            data = data.reshape( ( dim, ) * order )
        if data.ndim < 2 or len( set( data.shape ) ) != 1:
            raise ArgumentError( 'tensor must be (n,)*m with m >= 2, got '
                                 'shape %s' % ( data.shape, ) )
        if data.shape[ 0 ] < 1:
            raise ArgumentError( 'tensor dimension must be >= 1' )
        bad = ~np.isfinite( data ) | ( data < 0 )
        if bad.any():
            index = tuple( int( i ) + 1 for i in np.argwhere( bad )[ 0 ] )
            raise ArgumentError( 'entry %s = %r is not a finite nonnegative '
                                 'number' % ( index, data[ bad ][ 0 ] ) )
        data.setflags( write=False )
        self.entries = data

    @property
    def order( self ):
        "Tensor order m"
        return self.entries.ndim

    @property
    def dim( self ):
        "Tensor dimension n"
        return self.entries.shape[ 0 ]

    @property
    def flat( self ):
        "Entries as a flat lexicographic array"
        return self.entries.ravel()

    def entry( self, *index ):
        "Entry at 1-based multi-index ( i1, ..., im )"
        if len( index ) != self.order:
            raise ArgumentError( 'need %d indices, got %d' %
                                 ( self.order, len( index ) ) )
        if not all( 1 <= i <= self.dim for i in index ):
            raise ArgumentError( 'index %s out of range 1..%d' %
                                 ( index, self.dim ) )
        return float( self.entries[ tuple( i - 1 for i in index ) ] )

    def __eq__( self, other ):
        if not isinstance( other, DenseTensor ):
            return NotImplemented
        return ( self.entries.shape == other.entries.shape and
                 np.array_equal( self.entries, other.entries ) )

    __hash__ = None

    def __repr__( self ):
        return 'DenseTensor( order=%d, dim=%d )' % ( self.order, self.dim )


def checkVector( x, n, name='x' ):
    """Return x as a float vector of length n.
       raises ArgumentError on shape mismatch or non-finite values"""
    x = np.asarray( x, dtype=float )
    if x.shape != ( n, ):
        raise ArgumentError( '%s must have length %d, got shape %s' %
                             ( name, n, x.shape ) )
    if not np.isfinite( x ).all():
        raise ArgumentError( '%s has non-finite components' % name )
    return x

def checkScaling( d, n ):
    """Return d as a scaling vector: the diagonal of a nonsingular
       diagonal matrix D, with n strictly positive finite values."""
    d = checkVector( d, n, name='scaling vector' )
    if ( d <= 0 ).any():
        i = int( np.argmax( d <= 0 ) )
        raise ArgumentError( 'scaling entry %d = %r is not positive' %
                             ( i + 1, d[ i ] ) )
    return d


# Operations

def contract( A, x ):
    """Multilinear contraction ( A x^{m-1} )_i =
       sum a[i,i2,...,im] x[i2]...x[im].
       A: DenseTensor
       x: vector of length n
       returns: vector of length n"""
    x = checkVector( x, A.dim )
    result = A.entries
    # Contract the trailing index m-1 times; each row's accumulation
    # order depends only on the layout.
    for _ in range( A.order - 1 ):
        result = np.tensordot( result, x, axes=1 )
    return result

def rowSums( A ):
    "Row sums R_i = sum a[i,i2,...,im], i.e. contract( A, ones )."
    return contract( A, np.ones( A.dim ) )

def diagonalSimilarity( A, d ):
    """Diagonally similar tensor
       a'[i1,...,im] = d[i1]^-(m-1) a[i1,...,im] d[i2]...d[im].
       A: DenseTensor
       d: strictly positive scaling vector (diagonal of D)
       returns: DenseTensor with the same eigenvalues as A"""
    m, n = A.order, A.dim
    d = checkScaling( d, n )
    shape = [ 1 ] * m
    shape[ 0 ] = n
    result = A.entries / d.reshape( shape ) ** ( m - 1 )
    for axis in range( 1, m ):
        shape = [ 1 ] * m
        shape[ axis ] = n
        result = result * d.reshape( shape )
    return DenseTensor( result )

def addIdentityShift( B, alpha ):
    """B + alpha*I, where I has unit entries on the superdiagonal
       ( i, i, ..., i ) so that I x^{m-1} = x^[m-1].
       alpha: nonnegative shift"""
    if not isfinite( alpha ) or alpha < 0:
        raise ArgumentError( 'shift alpha must be a finite number >= 0, '
                             'got %r' % ( alpha, ) )
    entries = np.array( B.entries )
    diag = ( np.arange( B.dim ), ) * B.order
    entries[ diag ] += alpha
    return DenseTensor( entries )

def addTensors( A, B ):
    "Entrywise sum of two tensors of the same shape."
    if A.entries.shape != B.entries.shape:
        raise ArgumentError( 'cannot add tensors of (m,n) = (%d,%d) and '
                             '(%d,%d)' % ( A.order, A.dim, B.order, B.dim ) )
    return DenseTensor( A.entries + B.entries )

def isPositive( A ):
    "Return True if every entry of A is strictly positive."
    return bool( ( A.entries > 0 ).all() )


# Generators

def randomTensor( m, n, seed=None, maxEntries=None ):
    """Tensor with entries drawn i.i.d. uniform on [0, 10].
       Identical ( m, n, seed ) give bit-identical tensors."""
    checkSize( m, n, maxEntries )
    rng = np.random.default_rng( seed )
    return DenseTensor( rng.uniform( 0, 10, size=( n, ) * m ) )

def sparseTensor( m, n, seed=None, zeros=0.7, maxEntries=None ):
    """Random tensor with roughly a fraction `zeros` of its entries
       set to zero and the rest uniform on [0, 10]."""
    checkSize( m, n, maxEntries )
    if not 0 <= zeros <= 1:
        raise ArgumentError( 'zero fraction must lie in [0, 1], got %r' %
                             ( zeros, ) )
    rng = np.random.default_rng( seed )
    values = rng.uniform( 0, 10, size=( n, ) * m )
    values[ rng.random( size=values.shape ) < zeros ] = 0
    return DenseTensor( values )

def diagonalTensor( m, n, seed=None, maxEntries=None ):
    "Tensor whose only nonzero entries sit on the superdiagonal."
    checkSize( m, n, maxEntries )
    rng = np.random.default_rng( seed )
    entries = np.zeros( ( n, ) * m )
    entries[ ( np.arange( n ), ) * m ] = rng.uniform( 1, 10, size=n )
    return DenseTensor( entries )

def identityTensor( m, n, alpha=1.0 ):
    "The shift tensor alpha*I."
    return addIdentityShift( DenseTensor( np.zeros( ( n, ) * m ) ), alpha )

def onesTensor( m, n ):
    "All-ones tensor; every row sum equals n^{m-1}."
    checkSize( m, n )
    return DenseTensor( np.ones( ( n, ) * m ) )

def exampleTensor():
    """The order 3, dimension 3 test tensor with
       b[1,2,2] = 3.72, b[2,1,1] = 9.02, b[3,1,1] = 9.55 and zeros
       elsewhere."""
    entries = np.zeros( ( 3, 3, 3 ) )
    entries[ 0, 1, 1 ] = 3.72
    entries[ 1, 0, 0 ] = 9.02
    entries[ 2, 0, 0 ] = 9.55
    return DenseTensor( entries )

def exampleKind( m=3, n=3, seed=None ):
    "exampleTensor() for the registry; only ( m, n ) = ( 3, 3 ) fits."
    if ( m, n ) != ( 3, 3 ):
        raise ArgumentError( 'the example tensor has (m,n) = (3,3), '
                             'not (%d,%d)' % ( m, n ) )
    return exampleTensor()

TENSORS = { 'uniform': randomTensor,
            'sparse': sparseTensor,
            'diagonal': diagonalTensor,
            'ones': lambda m, n, seed=None: onesTensor( m, n ),
            'identity': lambda m, n, seed=None, alpha=1.0:
                identityTensor( m, n, alpha ),
            'example': exampleKind }


# Text format

def parseTensor( lines, maxEntries=None ):
    """Parse the tensor text format.
       lines: iterable of strings, or of UTF-8 encoded bytes
       returns: DenseTensor
       raises ParseError naming the offending line"""
    entries = None
    seen = set()
    m = n = None
    for lineno, line in enumerate( lines, start=1 ):
        if isinstance( line, bytes ):
            try:
                line = line.decode( 'utf-8' )
            except UnicodeDecodeError as e:
                raise ParseError( lineno, 'not UTF-8 text (%s)' % e.reason )
        fields = line.split( '#', 1 )[ 0 ].split()
        if not fields:
            continue
        if entries is None:
            if len( fields ) != 2:
                raise ParseError( lineno, 'header must be "m n", got %r' %
                                  line.strip() )
            try:
                m, n = int( fields[ 0 ] ), int( fields[ 1 ] )
            except ValueError:
                raise ParseError( lineno, 'header values must be integers' )
            try:
                checkSize( m, n, maxEntries )
            except ArgumentError as e:
                raise ParseError( lineno, str( e ) )
            except ResourceError as e:
                raise ResourceError( 'line %d: %s' % ( lineno, e ) )
            entries = np.zeros( ( n, ) * m )
            continue
        if len( fields ) != m + 1:
            raise ParseError( lineno, 'expected %d indices and a value, got '
                              '%d fields' % ( m, len( fields ) ) )
        try:
            index = tuple( int( f ) for f in fields[ :m ] )
        except ValueError:
            raise ParseError( lineno, 'indices must be integers' )
        if not all( 1 <= i <= n for i in index ):
            raise ParseError( lineno, 'index %s out of range 1..%d' %
                              ( index, n ) )
        try:
            value = float( fields[ m ] )
        except ValueError:
            raise ParseError( lineno, 'bad value %r' % fields[ m ] )
        if not isfinite( value ) or value < 0:
            raise ParseError( lineno, 'value %r is not a finite nonnegative '
                              'number' % fields[ m ] )
        if index in seen:
            raise ParseError( lineno, 'duplicate index %s' % ( index, ) )
        seen.add( index )
        entries[ tuple( i - 1 for i in index ) ] = value
    if entries is None:
        raise ParseError( 1, 'empty tensor file: missing "m n" header' )
    return DenseTensor( entries )

def readTensor( path, maxEntries=None ):
    "Read a tensor from a UTF-8 text file."
    with open( path, 'rb' ) as f:
        return parseTensor( f, maxEntries )

def formatTensor( A ):
    """Tensor text with one line per nonzero entry; values use repr
       precision so parsing gives back identical entries."""
    lines = [ '%d %d' % ( A.order, A.dim ) ]
    for index in zip( *np.nonzero( A.entries ) ):
        value = float( A.entries[ index ] )
        lines.append( '%s %r' % ( ' '.join( str( int( i ) + 1 )
                                           for i in index ), value ) )
    return '\n'.join( lines ) + '\n'

def writeTensor( A, path ):
    "Write a tensor to a text file."
    with open( path, 'w' ) as f:
        f.write( formatTensor( A ) )
