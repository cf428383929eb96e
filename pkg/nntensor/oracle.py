"""
Reference estimators for the spectral radius of a nonnegative tensor,
independent of the smoothing iteration.

collatzWielandtBounds: for any positive x, rho(A) lies between the
    smallest and largest ratio ( A x^{m-1} )_i / x_i^{m-1}.  With x all
    ones these are the row-sum bounds.

powerIteration: the multilinear power method
    x <- normalize( ( A x^{m-1} )^[1/(m-1)] )
    with a Collatz-Wielandt bracket evaluated at every iterate.
"""

from collections import namedtuple

import numpy as np

from nntensor.log import debug
from nntensor.tensor import contract, rowSums, checkVector, EigenPair
from nntensor.util import ArgumentError, PreconditionError

# Oracle defaults: tighter than the solver so it can serve as reference
ORACLE_TOL = 1e-9
ORACLE_MAXITER = 10000


class OracleEstimate( namedtuple( 'OracleEstimate',
                                  'lower upper vector iterations converged' ) ):
    "Bracket [ lower, upper ] for rho(A) with the last power iterate."

    __slots__ = ()

    @property
    def midpoint( self ):
        "Center of the bracket"
        return 0.5 * ( self.lower + self.upper )

    @property
    def eigenpair( self ):
        "Bracket midpoint with the last power iterate"
        return EigenPair( self.midpoint, self.vector )


def _ratios( A, x ):
    "Componentwise ( A x^{m-1} )_i / x_i^{m-1} together with A x^{m-1}."
    y = contract( A, x )
    return y / x ** ( A.order - 1 ), y

def collatzWielandtBounds( A, x ):
    """Collatz-Wielandt bracket for rho(A) at a positive vector.
       x: strictly positive vector
       returns: ( lower, upper )"""
    x = checkVector( x, A.dim )
    if ( x <= 0 ).any():
        raise ArgumentError( 'Collatz-Wielandt bounds need x > 0' )
    ratios, _y = _ratios( A, x )
    return float( ratios.min() ), float( ratios.max() )

def powerIteration( A, tol=ORACLE_TOL, maxIter=ORACLE_MAXITER ):
    """Multilinear power iteration from the all-ones vector.
       A: DenseTensor with positive row sums
       tol: stop when upper - lower <= tol
       maxIter: iteration cap
       returns: OracleEstimate; converged is False when the cap is hit or
                a zero component appears (the last valid bracket is kept)"""
    if ( rowSums( A ) <= 0 ).any():
        raise PreconditionError( 'power iteration needs every row sum > 0' )
    m = A.order
    x = np.ones( A.dim )
    lower, upper = -np.inf, np.inf
    for iterations in range( maxIter + 1 ):
        ratios, y = _ratios( A, x )
        lower, upper = float( ratios.min() ), float( ratios.max() )
        if upper - lower <= tol:
            return OracleEstimate( lower, upper, x, iterations, True )
        if iterations == maxIter:
            break
        nextX = y ** ( 1.0 / ( m - 1 ) )
        nextX = nextX / nextX.max()
        if ( nextX <= 0 ).any():
            debug( 'power iteration: zero component after %d iterations\n' %
                   ( iterations + 1 ) )
            break
        x = nextX
    return OracleEstimate( lower, upper, x, iterations, False )
