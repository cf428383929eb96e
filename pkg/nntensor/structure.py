"""
Irreducibility of nonnegative tensors.

B (order m, dimension n) is reducible if some nonempty proper index
subset I has b[i1,i2,...,im] = 0 whenever i1 is in I and i2,...,im are
all outside I.  Such an I is returned as the witness of a reducible
verdict.

Two independent deciders are provided:

irreducibleIterative: support propagation.  The zero pattern of
    ( B + I ) x^{m-1} depends only on the support of x, so starting from
    each singleton support {j} we grow
        S <- S + { i : b[i,i2,...,im] > 0 for some i2,...,im in S }
    B is irreducible iff every start reaches {1..n} within n-1 steps.
    A start that stalls at S gives the witness {1..n} - S.

reducibleBruteforce: enumerates all 2^n - 2 subsets (n <= 20).

Entries count as nonzero iff they are > 0 exactly.
"""

from collections import namedtuple

import numpy as np

from nntensor.tensor import addIdentityShift, contract, checkVector
from nntensor.util import ArgumentError, ResourceError, irange, fmtSubset

# Largest dimension reducibleBruteforce will enumerate
BRUTEFORCE_MAXDIM = 20

# witness: sorted tuple of 1-based indices, or None when irreducible
IrreducibilityVerdict = namedtuple( 'IrreducibilityVerdict',
                                    'irreducible witness' )


def isReducingSubset( B, subset ):
    """Check the zero pattern of a candidate witness.
       subset: iterable of 1-based indices
       returns: True if subset is nonempty, proper and every
                b[i1,i2,...,im] with i1 in subset, i2..im outside is 0"""
    n = B.dim
    inside = sorted( set( i - 1 for i in subset ) )
    if not inside or len( inside ) == n:
        return False
    if inside[ 0 ] < 0 or inside[ -1 ] >= n:
        raise ArgumentError( 'subset %s out of range 1..%d' %
                             ( fmtSubset( subset ), n ) )
    outside = [ i for i in range( n ) if i not in inside ]
    block = B.entries[ np.ix_( inside, *[ outside ] * ( B.order - 1 ) ) ]
    return not block.any()

def _grow( pattern, support ):
    "One propagation step on a boolean support mask."
    idx = np.flatnonzero( support )
    rows = pattern[ np.ix_( range( len( support ) ),
                            *[ idx ] * ( pattern.ndim - 1 ) ) ]
    return support | rows.reshape( len( support ), -1 ).any( axis=1 )

def supportSequence( B, start ):
    """Supports S0 = {start}, S1, ... reached by propagation, up to n-1
       growth steps; stops early once the support is full or stalls.
       start: 1-based index
       yields: frozensets of 1-based indices"""
    n = B.dim
    if not 1 <= start <= n:
        raise ArgumentError( 'start %r out of range 1..%d' % ( start, n ) )
    pattern = B.entries > 0
    support = np.zeros( n, dtype=bool )
    support[ start - 1 ] = True
    yield frozenset( [ start ] )
    for _ in range( n - 1 ):
        grown = _grow( pattern, support )
        if ( grown == support ).all():
            return
        support = grown
        yield frozenset( int( i ) for i in np.flatnonzero( support ) + 1 )
        if support.all():
            return

def irreducibleIterative( B ):
    """Decide irreducibility by support propagation from every singleton.
       returns: IrreducibilityVerdict; a reducible verdict carries the
                lexicographically smallest witness among stalled starts"""
    n = B.dim
    witnesses = []
    for j in irange( 1, n ):
        for reached in supportSequence( B, j ):
            pass
        if len( reached ) < n:
            witness = tuple( i for i in irange( 1, n ) if i not in reached )
            if not isReducingSubset( B, witness ):
                raise RuntimeError( 'support propagation from %d stalled at '
                                    '%s but %s is not a reducing subset' %
                                    ( j, fmtSubset( reached ),
                                      fmtSubset( witness ) ) )
            witnesses.append( witness )
    if not witnesses:
        return IrreducibilityVerdict( True, None )
    return IrreducibilityVerdict( False, min( witnesses ) )

def _lexicographicSubsets( n, prefix=() ):
    "Nonempty proper subsets of 1..n as sorted tuples, in lexicographic order."
    first = prefix[ -1 ] + 1 if prefix else 1
    for i in irange( first, n ):
        subset = prefix + ( i, )
        if len( subset ) < n:
            yield subset
        yield from _lexicographicSubsets( n, subset )

def reducibleBruteforce( B, maxDim=BRUTEFORCE_MAXDIM ):
    """Decide reducibility by enumerating every nonempty proper subset.
       returns: IrreducibilityVerdict with the lexicographically smallest
                reducing subset as witness
       raises ResourceError when n > maxDim"""
    if B.dim > maxDim:
        raise ResourceError( 'subset enumeration over n = %d indices exceeds '
                             'the cap n <= %d; use irreducibleIterative' %
                             ( B.dim, maxDim ) )
    for subset in _lexicographicSubsets( B.dim ):
        if isReducingSubset( B, subset ):
            return IrreducibilityVerdict( False, subset )
    return IrreducibilityVerdict( True, None )

def dominationIterates( B, x, y ):
    """Run x <- ( B + I ) x^{m-1} and y <- ( B + I ) y^{m-1} for n-1 steps
       and report whether the final x exceeds y in every component.
       Always True for irreducible B; may be False for reducible B.
       x, y: nonnegative vectors with x >= y and x != y"""
    n = B.dim
    x = checkVector( x, n, name='x' )
    y = checkVector( y, n, name='y' )
    if ( y < 0 ).any():
        raise ArgumentError( 'x and y must be nonnegative' )
    if ( x < y ).any():
        raise ArgumentError( 'x must dominate y componentwise' )
    if ( x == y ).all():
        raise ArgumentError( 'x and y must differ' )
    A = addIdentityShift( B, 1.0 )
    for _ in range( n - 1 ):
        x, y = contract( A, x ), contract( A, y )
        # same positive factor for both
        scale = x.max()
        if scale > 0:
            x, y = x / scale, y / scale
    return bool( ( x > y ).all() )
