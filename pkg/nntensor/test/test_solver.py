#!/usr/bin/env python

"""Package: nntensor
   Test the smoothing iteration against the 3 x 3 x 3 example tensor, random
   ensembles, the power-iteration oracle and the matrix case."""

import csv
import os
import time
import unittest
from tempfile import TemporaryDirectory

import numpy as np

from nntensor.log import setLogLevel
from nntensor.oracle import powerIteration
from nntensor.solver import ( SolverConfig, initState, step, iterate, solve,
                              residual, contractionFactor, traceRow,
                              traceTable, writeTraceCsv, TRACE_HEADER )
from nntensor.tensor import ( DenseTensor, exampleTensor, randomTensor,
                              onesTensor, identityTensor, addIdentityShift )
from nntensor.util import ArgumentError, PreconditionError

# k, r, R, R - r, ( R + r ) / 2 for the shifted example tensor
TABLE = [ ( 1, 4.72, 10.55, 5.83, 7.635 ),
          ( 2, 5.24894, 8.89712, 3.64818, 7.07303 ),
          ( 3, 5.65898, 8.2097, 2.55071, 6.93434 ),
          ( 4, 5.96904, 7.7527, 1.78366, 6.86087 ),
          ( 5, 6.19911, 7.45402, 1.25491, 6.82656 ),
          ( 6, 6.36745, 7.25147, 0.88402, 6.80946 ) ]

EXAMPLE_RHO = 5.79262
EXAMPLE_VECTOR = ( 0.46224, 0.57681, 0.593515 )

# Slack for floating point comparisons of monotone bounds
SLACK = 1e-12


def ensemble( shapes, count, seed=0 ):
    "Seeded random tensors for each ( n, m ) shape."
    tensors = []
    for n, m in shapes:
        for i in range( count ):
            tensors.append( randomTensor( m, n, seed=( seed, n, m, i ) ) )
    return tensors

def sigEqual( a, b, digits=5 ):
    "Do a and b agree to the given number of significant digits?"
    return abs( a - b ) <= 0.5 * 10 ** ( 1 - digits ) * abs( b )


class testSolverConfig( unittest.TestCase ):
    "SolverConfig validation."

    def testDefaults( self ):
        "Default shift, tolerance and iteration cap"
        config = SolverConfig()
        self.assertEqual( ( config.alpha, config.tol, config.maxIter ),
                          ( 1.0, 1e-7, 100 ) )

    def testInvalid( self ):
        "Bad parameters are rejected"
        for kwargs in ( dict( alpha=-1 ), dict( tol=0 ), dict( tol=-1e-3 ),
                        dict( maxIter=0 ), dict( maxIter=2.5 ),
                        dict( alpha=float( 'inf' ) ) ):
            with self.assertRaises( ArgumentError ):
                SolverConfig( **kwargs )


class testInit( unittest.TestCase ):
    "Initial state of the iteration."

    def testExample( self ):
        "Initial bounds are the extreme row sums of B + I"
        state = initState( exampleTensor(), SolverConfig() )
        self.assertAlmostEqual( state.lower, 4.72, places=12 )
        self.assertAlmostEqual( state.upper, 10.55, places=12 )
        self.assertEqual( state.k, 0 )
        self.assertTrue( ( state.accumulator > 0 ).all() )
        self.assertTrue( ( state.accumulator <= 1 ).all() )

    def testConstantRowSums( self ):
        "All-ones tensor starts with equal bounds and unit accumulator"
        state = initState( onesTensor( 3, 2 ), SolverConfig() )
        self.assertEqual( ( state.lower, state.upper ), ( 5.0, 5.0 ) )
        np.testing.assert_array_equal( state.accumulator, [ 1, 1 ] )

    def testZeroRow( self ):
        "A zero row with alpha = 0 violates the row-sum precondition"
        entries = np.zeros( ( 3, 3, 3 ) )
        entries[ 0 ] = 1
        entries[ 2, 0, 0 ] = 2
        with self.assertRaises( PreconditionError ) as cm:
            initState( DenseTensor( entries ), SolverConfig( alpha=0 ) )
        self.assertIn( 'row 2', str( cm.exception ) )
        # any positive shift repairs it
        initState( DenseTensor( entries ), SolverConfig( alpha=0.5 ) )


class testStep( unittest.TestCase ):
    "Single smoothing steps."

    def testExample( self ):
        "One step reproduces the second reference row"
        state = step( initState( exampleTensor(), SolverConfig() ) )
        self.assertEqual( state.k, 1 )
        self.assertTrue( sigEqual( state.lower, 5.24894, 6 ) )
        self.assertTrue( sigEqual( state.upper, 8.89712, 6 ) )
        self.assertTrue( sigEqual( state.sums[ 2 ], 5.27261, 6 ) )

    def testFixedPoint( self ):
        "A constant-row-sum state is left unchanged"
        state = initState( onesTensor( 4, 3 ), SolverConfig() )
        self.assertIs( step( state ), state )

    def testSumsMatchTensor( self ):
        "Stored row sums are the row sums of the stored tensor"
        state = initState( randomTensor( 3, 6, 1 ), SolverConfig() )
        for _ in range( 5 ):
            state = step( state )
        np.testing.assert_allclose( state.sums,
                                    state.tensor.entries.sum( axis=( 1, 2 ) ),
                                    rtol=1e-12 )


class testExample( unittest.TestCase ):
    "The 3 x 3 x 3 example tensor."

    def testTable( self ):
        "Trace rows 1-6 match the reference values"
        start = time.time()
        report = solve( exampleTensor() )
        self.assertLess( time.time() - start, 1.0 )
        for row, expected in zip( report.trace, TABLE ):
            self.assertEqual( row.k, expected[ 0 ] )
            for value, reference in zip( row[ 1: ], expected[ 1: ] ):
                self.assertTrue( sigEqual( value, reference ),
                                 '%r != %r in row %d' %
                                 ( value, reference, row.k ) )

    def testConvergence( self ):
        "Converges below 1e-7 by row 60 with the known eigenpair"
        report = solve( exampleTensor() )
        self.assertTrue( report.converged )
        self.assertLessEqual( report.finalGap, 1e-7 )
        self.assertLessEqual( len( report.trace ), 60 )
        self.assertEqual( report.trace[ -1 ].k, report.iterations + 1 )
        self.assertAlmostEqual( report.rho, EXAMPLE_RHO, delta=1e-4 )
        self.assertAlmostEqual( report.rhoShifted, EXAMPLE_RHO + 1,
                                delta=1e-4 )
        np.testing.assert_allclose( report.eigenvector, EXAMPLE_VECTOR,
                                    atol=1e-4 )
        self.assertLessEqual( report.residual, 1e-6 )

    def testUnshifted( self ):
        "Without the shift the iteration cycles and hits the cap"
        report = solve( exampleTensor(), SolverConfig( alpha=0 ) )
        self.assertFalse( report.converged )
        self.assertEqual( report.iterations, 100 )
        self.assertGreater( report.finalGap, 1e-7 )
        self.assertEqual( len( report.trace ), 101 )

    def testReportedRho( self ):
        "rho is the bracket midpoint minus the shift"
        report = solve( exampleTensor(), SolverConfig( alpha=2.0 ) )
        self.assertEqual( report.rhoShifted,
                          0.5 * ( report.upper + report.lower ) )
        self.assertEqual( report.rho, report.rhoShifted - 2.0 )
        self.assertEqual( report.converged, report.finalGap <= 1e-7 )

    def testNormalize( self ):
        "normalize scales the eigenvector to unit maximum"
        plain = solve( exampleTensor() )
        scaled = solve( exampleTensor(), SolverConfig( normalize=True ) )
        self.assertEqual( scaled.eigenvector.max(), 1.0 )
        np.testing.assert_allclose( scaled.eigenvector,
                                    plain.eigenvector /
                                    plain.eigenvector.max(), rtol=1e-14 )

    def testNoTrace( self ):
        "trace=False records nothing"
        report = solve( exampleTensor(), SolverConfig( trace=False ) )
        self.assertEqual( report.trace, [] )
        self.assertTrue( report.converged )


class testConstantRowSums( unittest.TestCase ):
    "All-ones tensors terminate immediately."

    def testOnes( self ):
        "rho( ones + alpha I ) = n^{m-1} + alpha with zero steps"
        for m in ( 2, 3, 4 ):
            for n in ( 2, 3 ):
                report = solve( onesTensor( m, n ) )
                self.assertEqual( report.iterations, 0 )
                self.assertEqual( len( report.trace ), 1 )
                self.assertEqual( report.rhoShifted, n ** ( m - 1 ) + 1.0 )
                self.assertEqual( report.rho, float( n ** ( m - 1 ) ) )
                self.assertTrue( report.converged )


class testResidual( unittest.TestCase ):
    "Eigen-equation residual."

    def testIdentity( self ):
        "All ones is an exact eigenvector of alpha I"
        self.assertEqual( residual( identityTensor( 3, 4, 2.5 ), 2.5,
                                    np.ones( 4 ) ), 0.0 )

    def testDimensionMismatch( self ):
        "v must have length n"
        with self.assertRaises( ArgumentError ):
            residual( onesTensor( 3, 2 ), 1.0, [ 1, 1, 1 ] )

    def testLimit( self ):
        "Converged runs satisfy the eigen-equation to 10 tol max R"
        for B in ensemble( [ ( 5, 3 ), ( 4, 4 ) ], 5 ):
            report = solve( B )
            self.assertTrue( report.converged )
            bound = 10 * 1e-7 * report.upper
            self.assertLessEqual( report.residual, bound )

    def testOracleResidual( self ):
        "Solver and oracle eigenpairs have comparable residuals"
        B = randomTensor( 3, 5, 99 )
        report = solve( B )
        estimate = powerIteration( report.tensor )
        oracleResidual = residual( report.tensor, *estimate.eigenpair )
        self.assertEqual( residual( report.tensor, *report.eigenpair ),
                          report.residual )
        self.assertLessEqual( abs( report.residual - oracleResidual ), 1e-6 )


class testContractionFactor( unittest.TestCase ):
    "Gap contraction bound."

    def testExample( self ):
        "Factor at the example start dominates the observed ratio"
        state = initState( exampleTensor(), SolverConfig() )
        factor = contractionFactor( state )
        # only position (2,2) falls outside J; row 3 has no mass there and
        # row 1 keeps its unit diagonal entry inside J
        self.assertAlmostEqual( factor, 1 - 1 / 10.55, places=12 )
        self.assertGreaterEqual( factor, 3.64818 / 5.83 )

    def testPositive( self ):
        "Strictly positive tensors contract strictly"
        state = initState( randomTensor( 3, 4, 3 ), SolverConfig() )
        self.assertLess( contractionFactor( state ), 1.0 )
        self.assertGreaterEqual( contractionFactor( state ), 0.0 )

    def testConstant( self ):
        "Undefined at a constant-row-sum state"
        state = initState( onesTensor( 3, 3 ), SolverConfig() )
        with self.assertRaises( PreconditionError ):
            contractionFactor( state )

    def testBound( self ):
        "gap( k+1 ) <= factor * gap( k ) along positive runs"
        for B in ensemble( [ ( 4, 3 ) ], 10, seed=8 ):
            states = list( iterate( B, SolverConfig() ) )
            for state, nextState in zip( states, states[ 1: ] ):
                factor = contractionFactor( state )
                self.assertLess( factor, 1.0 )
                self.assertLessEqual( nextState.upper - nextState.lower,
                                      factor * ( state.upper - state.lower ) +
                                      SLACK )


class testProperties( unittest.TestCase ):
    "Invariants over random ensembles."

    shapes = [ ( 5, 3 ), ( 10, 3 ), ( 5, 4 ) ]

    def assertMonotone( self, states ):
        "Lower bounds never decrease, upper bounds never increase"
        for state, nextState in zip( states, states[ 1: ] ):
            self.assertGreaterEqual( nextState.lower, state.lower - SLACK )
            self.assertLessEqual( nextState.upper, state.upper + SLACK )
            self.assertLessEqual( nextState.lower, nextState.upper )

    def testEnsemble( self ):
        "Random tensors converge quickly with small residuals"
        start = time.time()
        for B in ensemble( self.shapes, 10 ):
            config = SolverConfig()
            states = list( iterate( B, config ) )
            self.assertMonotone( states )
            report = solve( B, config )
            self.assertTrue( report.converged )
            self.assertLessEqual( report.iterations, 20 )
            self.assertLessEqual( report.finalGap, 1e-7 )
            self.assertLessEqual( report.residual, 1e-6 )
            self.assertTrue( ( report.eigenvector > 0 ).all() )
        self.assertLess( time.time() - start, 10.0 )

    def testExampleMonotone( self ):
        "Monotone bounds on the example, with and without the shift"
        for alpha in ( 0.0, 1.0 ):
            self.assertMonotone( list( iterate( exampleTensor(),
                                                SolverConfig( alpha=alpha ) ) ) )

    def testSandwich( self ):
        "The oracle estimate stays inside every iterate's bracket"
        for B in ensemble( [ ( 5, 3 ) ], 5, seed=3 ):
            states = list( iterate( B, SolverConfig() ) )
            rho = powerIteration( states[ 0 ].tensor ).midpoint
            for state in states:
                self.assertGreaterEqual( rho, state.lower - 1e-6 )
                self.assertLessEqual( rho, state.upper + 1e-6 )

    def testOracleAgreement( self ):
        "Smoothing and power iteration agree on 20 positive tensors"
        for B in ensemble( [ ( 5, 3 ) ], 20, seed=5 ):
            report = solve( B )
            estimate = powerIteration( report.tensor )
            self.assertTrue( estimate.converged )
            self.assertLessEqual( abs( report.rhoShifted -
                                       estimate.midpoint ), 1e-5 )
            self.assertGreaterEqual( report.rhoShifted,
                                     estimate.lower - 1e-6 )
            self.assertLessEqual( report.rhoShifted, estimate.upper + 1e-6 )

    def testShiftEquivariance( self ):
        "rho does not depend on the shift"
        for B in ensemble( [ ( 5, 3 ), ( 4, 4 ) ], 5, seed=4 ):
            one = solve( B, SolverConfig( alpha=1.0 ) )
            two = solve( B, SolverConfig( alpha=2.0 ) )
            self.assertAlmostEqual( one.rho, two.rho, delta=1e-5 )

    def testMatrices( self ):
        "On matrices the result is the Perron root"
        for i in range( 10 ):
            M = np.random.default_rng( ( 6, i ) ).uniform( 0.1, 10, ( 5, 5 ) )
            report = solve( DenseTensor( M ) )
            self.assertTrue( report.converged )
            perron = max( abs( np.linalg.eigvals( M ) ) )
            self.assertAlmostEqual( report.rho, perron, delta=1e-6 )
            estimate = powerIteration( DenseTensor( M ) )
            self.assertAlmostEqual( report.rho, estimate.midpoint,
                                    delta=1e-6 )


class testTrace( unittest.TestCase ):
    "Trace rows and CSV output."

    def testRow( self ):
        "Trace row fields"
        row = traceRow( initState( exampleTensor(), SolverConfig() ) )
        self.assertEqual( row.k, 1 )
        self.assertAlmostEqual( row.gap, 5.83, places=12 )
        self.assertAlmostEqual( row.midpoint, 7.635, places=12 )

    def testTable( self ):
        "Header first, full precision values"
        rows = traceTable( solve( exampleTensor() ).trace )
        self.assertEqual( rows[ 0 ], list( TRACE_HEADER ) )
        self.assertEqual( rows[ 2 ][ 0 ], '2' )
        self.assertTrue( sigEqual( float( rows[ 2 ][ 1 ] ), 5.24894, 6 ) )

    def testCsv( self ):
        "CSV row 2 matches the reference row; gaps never increase"
        report = solve( exampleTensor() )
        with TemporaryDirectory() as tmp:
            path = os.path.join( tmp, 'trace.csv' )
            writeTraceCsv( report.trace, path )
            with open( path, newline='' ) as f:
                rows = list( csv.reader( f ) )
        self.assertEqual( rows[ 0 ], [ 'k', 'r', 'R', 'gap', 'mid' ] )
        self.assertEqual( len( rows ), len( report.trace ) + 1 )
        self.assertEqual( rows[ 2 ][ 0 ], '2' )
        for value, reference in zip( rows[ 2 ][ 1: ], TABLE[ 1 ][ 1: ] ):
            self.assertTrue( sigEqual( float( value ), reference, 6 ) )
        gaps = [ float( row[ 3 ] ) for row in rows[ 1: ] ]
        for gap, nextGap in zip( gaps, gaps[ 1: ] ):
            self.assertLessEqual( nextGap, gap + SLACK )


if __name__ == '__main__':
    setLogLevel( 'warning' )
    unittest.main()
