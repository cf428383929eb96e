"""
Spectral radius of nonnegative tensors by row-sum smoothing.

Given B >= 0 we work on the shifted tensor A = B + alpha*I.  Each step
replaces the current tensor A(k) by the diagonally similar tensor with
scaling d_i = R_i^(1/(m-1)), where R_i are the row sums of A(k):

    a(k+1)[i,i2,...,im] = a(k)[i,i2,...,im] (R_i2 ... R_im)^(1/(m-1)) / R_i

Similarity preserves the spectrum, and min_i R_i <= rho(A) <= max_i R_i
holds at every step, so each iterate carries a certified bracket
[ lower, upper ] for rho(A).  The bracket never widens; the run stops
when upper - lower <= tol or after maxIter steps.  The product of the
normalized scalings (R_i / max R)^(1/(m-1)) accumulates the
eigenvector of A.

Non-convergence (possible for reducible B with alpha = 0) is reported
in SolveReport.converged, never raised.
"""

import csv
from collections import namedtuple
from math import isfinite

import numpy as np

from nntensor.log import info, debug
from nntensor.tensor import ( contract, rowSums, diagonalSimilarity,
                              addIdentityShift, checkVector, EigenPair )
from nntensor.util import ArgumentError, PreconditionError, sigfig

TRACE_HEADER = ( 'k', 'r', 'R', 'gap', 'mid' )

TraceRow = namedtuple( 'TraceRow', 'k lower upper gap midpoint' )

# tensor: current similar tensor A(k); sums: its row sums;
# accumulator: eigenvector estimate prod_l ( R(l)_i / R(l) )^(1/(m-1))
IterationState = namedtuple( 'IterationState',
                             'tensor sums upper lower accumulator k' )


class SolveReport( namedtuple( 'SolveReport',
                               'rhoShifted rho eigenvector converged '
                               'iterations finalGap residual trace upper '
                               'lower alpha tensor' ) ):
    "Result of solve(); tensor is the shifted A = B + alpha*I."

    __slots__ = ()

    @property
    def eigenpair( self ):
        "Eigenvalue estimate and eigenvector of the shifted tensor"
        return EigenPair( self.rhoShifted, self.eigenvector )


class SolverConfig( object ):
    "Parameters of the smoothing iteration."

    def __init__( self, alpha=1.0, tol=1e-7, maxIter=100, trace=True,
                  normalize=False ):
        """alpha: nonnegative identity shift (A = B + alpha*I)
           tol: absolute gap tolerance on upper - lower
           maxIter: maximum number of smoothing steps
           trace: record a TraceRow per iterate?
           normalize: rescale the eigenvector to unit maximum entry?"""
        if not isfinite( alpha ) or alpha < 0:
            raise ArgumentError( 'alpha must be a finite number >= 0, '
                                 'got %r' % ( alpha, ) )
        if not isfinite( tol ) or tol <= 0:
            raise ArgumentError( 'tol must be positive, got %r' % ( tol, ) )
        if int( maxIter ) != maxIter or maxIter < 1:
            raise ArgumentError( 'maxIter must be an integer >= 1, got %r' %
                                 ( maxIter, ) )
        self.alpha = float( alpha )
        self.tol = float( tol )
        self.maxIter = int( maxIter )
        self.trace = trace
        self.normalize = normalize

    def __repr__( self ):
        return ( 'SolverConfig( alpha=%r, tol=%r, maxIter=%r, trace=%r, '
                 'normalize=%r )' % ( self.alpha, self.tol, self.maxIter,
                                      self.trace, self.normalize ) )


def _root( values, m ):
    "Componentwise (m-1)-th root of positive values."
    return np.exp( np.log( values ) / ( m - 1 ) )

def initState( B, config ):
    """Shift B by alpha*I and compute the initial row sums and bounds.
       raises PreconditionError if a row of the shifted tensor sums to 0"""
    A = addIdentityShift( B, config.alpha )
    sums = rowSums( A )
    zeros = np.flatnonzero( sums <= 0 )
    if zeros.size:
        raise PreconditionError( 'row %d of B + %g*I sums to zero; the '
                                 'iteration needs every row sum > 0 '
                                 '(use alpha > 0)' %
                                 ( zeros[ 0 ] + 1, config.alpha ) )
    upper, lower = float( sums.max() ), float( sums.min() )
    accumulator = _root( sums / upper, A.order )
    return IterationState( A, sums, upper, lower, accumulator, 0 )

def step( state ):
    """One smoothing step.
       A constant-row-sum state is a fixed point and is returned as is."""
    if state.lower >= state.upper:
        return state
    m = state.tensor.order
    tensor = diagonalSimilarity( state.tensor, _root( state.sums, m ) )
    sums = rowSums( tensor )
    upper, lower = float( sums.max() ), float( sums.min() )
    accumulator = state.accumulator * _root( sums / upper, m )
    return IterationState( tensor, sums, upper, lower, accumulator,
                           state.k + 1 )

def iterate( B, config ):
    """Generator of iteration states, starting with the initial one and
       ending when the gap reaches config.tol or after config.maxIter
       steps."""
    state = initState( B, config )
    yield state
    while ( state.upper - state.lower > config.tol and
            state.k < config.maxIter ):
        state = step( state )
        yield state

def traceRow( state ):
    "Trace row for a state; row k = 1 holds the initial bounds."
    return TraceRow( state.k + 1, state.lower, state.upper,
                     state.upper - state.lower,
                     0.5 * ( state.upper + state.lower ) )

def solve( B, config=None ):
    """Spectral radius and eigenvector of B >= 0.
       B: DenseTensor
       config: SolverConfig (default SolverConfig())
       returns: SolveReport"""
    config = SolverConfig() if config is None else config
    trace = []
    A = None
    for state in iterate( B, config ):
        if A is None:
            A = state.tensor
        debug( 'k=%d r=%r R=%r gap=%r\n' %
               ( state.k + 1, state.lower, state.upper,
                 state.upper - state.lower ) )
        if config.trace:
            trace.append( traceRow( state ) )
    gap = state.upper - state.lower
    converged = gap <= config.tol
    rhoShifted = 0.5 * ( state.upper + state.lower )
    vector = state.accumulator
    if config.normalize:
        vector = vector / vector.max()
    if converged:
        info( '*** Smoothing converged after %d steps, gap %s\n' %
              ( state.k, sigfig( gap ) ) )
    else:
        info( '*** Smoothing stopped at maxIter=%d, gap %s\n' %
              ( config.maxIter, sigfig( gap ) ) )
    return SolveReport( rhoShifted=rhoShifted,
                        rho=rhoShifted - config.alpha,
                        eigenvector=vector,
                        converged=converged,
                        iterations=state.k,
                        finalGap=gap,
                        residual=residual( A, rhoShifted, vector ),
                        trace=trace,
                        upper=state.upper,
                        lower=state.lower,
                        alpha=config.alpha,
                        tensor=A )

def residual( A, lam, v ):
    """Eigen-equation defect max_i | ( A v^{m-1} )_i - lam v_i^{m-1} |.
       A: DenseTensor
       lam: eigenvalue estimate
       v: eigenvector estimate"""
    v = checkVector( v, A.dim, name='v' )
    return float( np.max( np.abs( contract( A, v ) -
                                  lam * v ** ( A.order - 1 ) ) ) )

def contractionFactor( state ):
    """Upper bound on gap(k+1) / gap(k) for the current state:
       1 - ( sum_{N-J} a[s,...] + sum_J a[t,...] ) / R
       where s is the first row with the largest sum, t the first row
       with the smallest, and J the positions where row s, scaled by
       its sum, is at least row t scaled by its sum.
       returns: value in [ 0, 1 ]
       raises PreconditionError at a constant-row-sum state"""
    if state.lower >= state.upper:
        raise PreconditionError( 'contraction factor needs distinct largest '
                                 'and smallest row sums' )
    sums, a = state.sums, state.tensor.entries
    s, t = int( np.argmax( sums ) ), int( np.argmin( sums ) )
    inJ = a[ s ] / sums[ s ] >= a[ t ] / sums[ t ]
    mass = a[ s ][ ~inJ ].sum() + a[ t ][ inJ ].sum()
    return float( min( 1.0, max( 0.0, 1.0 - mass / state.upper ) ) )


# Trace output

def traceTable( trace ):
    "Trace rows as CSV records, header first, values at full precision."
    rows = [ list( TRACE_HEADER ) ]
    for row in trace:
        rows.append( [ str( row.k ) ] +
                     [ repr( float( v ) ) for v in row[ 1: ] ] )
    return rows

def writeTraceCsv( trace, path ):
    "Write trace rows to a CSV file with header k,r,R,gap,mid."
    with open( path, 'w', newline='' ) as f:
        csv.writer( f, lineterminator='\n' ).writerows( traceTable( trace ) )
