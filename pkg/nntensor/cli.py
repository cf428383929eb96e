"""
A simple command-line interface for nntensor.

Each verb of the nnt command is a do_ method of the CLI class, so

nnt solve example.tns --alpha 2

runs CLI().onecmd( 'solve example.tns --alpha 2' ), and 'nnt help solve'
prints the verb's docstring.  Verbs parse their own flags and return
the process exit code:

  0  success (solve converged, check found the tensor irreducible)
  1  input error: unreadable file, parse error, bad flag, size cap
  2  solve or bench stopped at --max-iter without converging
  3  check found the tensor reducible

Reports go to stdout; diagnostics go through nntensor.log.
"""

import argparse
import shlex
from cmd import Cmd

import numpy as np

from nntensor import VERSION
from nntensor.log import output, error, info, warn, setLogLevel, LEVELS
from nntensor.oracle import powerIteration
from nntensor.solver import SolverConfig, solve, writeTraceCsv
from nntensor.structure import irreducibleIterative, reducibleBruteforce
from nntensor.tensor import ( TENSORS, readTensor, randomTensor,
                              formatTensor, writeTensor )
from nntensor.util import ( NNTensorError, ArgumentError, buildTensor,
                            sigfig, fmtVector, fmtSubset, natural )

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NOTCONVERGED = 2
EXIT_REDUCIBLE = 3


class FlagParser( argparse.ArgumentParser ):
    "ArgumentParser that raises ArgumentError instead of exiting."

    def error( self, message ):
        raise ArgumentError( '%s: %s' % ( self.prog, message ) )


class CLI( Cmd ):
    "Command dispatcher for the nnt verbs."

    prompt = 'nnt> '

    def __init__( self, stdout=None ):
        """stdout: stream for reports (default sys.stdout)"""
        Cmd.__init__( self, stdout=stdout )

    def flags( self, verb ):
        "Flag parser for verb, described by its docstring."
        doc = getattr( self, 'do_' + verb ).__doc__
        return FlagParser( prog='nnt ' + verb,
                           description=doc.split( '\n' )[ 0 ] )

    def write( self, text ):
        "Write report text to our stdout."
        self.stdout.write( text )

    def onecmd( self, line ):
        "Run one verb line; map errors to exit codes."
        try:
            return Cmd.onecmd( self, line )
        except NNTensorError as e:
            error( 'Error: %s\n' % e )
            return EXIT_ERROR
        except OSError as e:
            error( 'Error: %s\n' % e )
            return EXIT_ERROR

    def emptyline( self ):
        "Empty command: print usage."
        self.do_help( '' )
        return EXIT_ERROR

    def default( self, line ):
        "Unknown verb."
        error( 'Error: unknown verb %r; try "nnt help"\n' %
               line.split()[ 0 ] )
        return EXIT_ERROR

    # Disable pylint "Unused argument" and "method could be a function"
    # warnings, since each verb must have the same interface
    # pylint: disable=R0201

    def do_solve( self, line ):
        """Spectral radius and eigenvector of a nonnegative tensor.
           Usage: solve PATH [--alpha A] [--tol T] [--max-iter K]
                  [--trace-csv CSV] [--oracle] [--normalize]"""
        parser = self.flags( 'solve' )
        parser.add_argument( 'path' )
        parser.add_argument( '--alpha', type=float, default=1.0,
                             help='identity shift (default 1.0)' )
        parser.add_argument( '--tol', type=float, default=1e-7,
                             help='gap tolerance (default 1e-7)' )
        parser.add_argument( '--max-iter', type=int, default=100,
                             help='iteration cap (default 100)' )
        parser.add_argument( '--trace-csv', metavar='CSV',
                             help='write the k,r,R,gap,mid trace here' )
        parser.add_argument( '--oracle', action='store_true',
                             help='also run the power-iteration oracle' )
        parser.add_argument( '--normalize', action='store_true',
                             help='scale the eigenvector to unit maximum' )
        opts = parser.parse_args( shlex.split( line ) )
        config = SolverConfig( alpha=opts.alpha, tol=opts.tol,
                               maxIter=opts.max_iter, trace=True,
                               normalize=opts.normalize )
        B = readTensor( opts.path )
        if config.alpha == 0:
            warn( '*** Warning: --alpha 0 may not converge on reducible '
                  'tensors; any alpha > 0 works\n' )
        info( '*** Solving (m,n) = (%d,%d) with %s\n' %
              ( B.order, B.dim, config ) )
        report = solve( B, config )
        self.write( 'rho = %s\n' % sigfig( report.rho ) )
        self.write( 'rho(B + %s*I) = %s in [ %s, %s ]\n' %
                    ( sigfig( report.alpha ), sigfig( report.rhoShifted ),
                      sigfig( report.lower ), sigfig( report.upper ) ) )
        self.write( 'iterations = %d  gap = %s  converged = %s\n' %
                    ( report.iterations, sigfig( report.finalGap ),
                      str( report.converged ).lower() ) )
        self.write( 'residual = %s\n' % sigfig( report.residual ) )
        self.write( 'eigenvector = %s\n' % fmtVector( report.eigenvector ) )
        if opts.oracle:
            estimate = powerIteration( report.tensor )
            self.write( 'oracle = [ %s, %s ] after %d iterations, '
                        'converged = %s\n' %
                        ( sigfig( estimate.lower ), sigfig( estimate.upper ),
                          estimate.iterations,
                          str( estimate.converged ).lower() ) )
        if opts.trace_csv:
            writeTraceCsv( report.trace, opts.trace_csv )
            output( '*** Wrote %d trace rows to %s\n' %
                    ( len( report.trace ), opts.trace_csv ) )
        return EXIT_OK if report.converged else EXIT_NOTCONVERGED

    def do_check( self, line ):
        """Decide whether a nonnegative tensor is irreducible.
           Usage: check PATH [--bruteforce]"""
        parser = self.flags( 'check' )
        parser.add_argument( 'path' )
        parser.add_argument( '--bruteforce', action='store_true',
                             help='enumerate index subsets (n <= 20) '
                             'instead of support propagation' )
        opts = parser.parse_args( shlex.split( line ) )
        B = readTensor( opts.path )
        if opts.bruteforce:
            verdict = reducibleBruteforce( B )
        else:
            verdict = irreducibleIterative( B )
        if verdict.irreducible:
            self.write( 'irreducible\n' )
            return EXIT_OK
        self.write( 'reducible, witness I = %s\n' %
                    fmtSubset( verdict.witness ) )
        return EXIT_REDUCIBLE

    def do_random( self, line ):
        """Generate a seeded random tensor in the tensor text format.
           Usage: random --m M --n N [--seed S] [--kind NAME[,key=val...]]
                  [--out PATH]"""
        parser = self.flags( 'random' )
        parser.add_argument( '--m', type=int, required=True,
                             help='tensor order' )
        parser.add_argument( '--n', type=int, required=True,
                             help='tensor dimension' )
        parser.add_argument( '--seed', type=int, default=0 )
        parser.add_argument( '--kind', default='uniform',
                             help='one of %s' %
                             '|'.join( sorted( TENSORS, key=natural ) ) )
        parser.add_argument( '--out', metavar='PATH',
                             help='output file (default stdout)' )
        opts = parser.parse_args( shlex.split( line ) )
        A = buildTensor( TENSORS, opts.kind, m=opts.m, n=opts.n,
                         seed=opts.seed )
        if opts.out:
            writeTensor( A, opts.out )
            output( '*** Wrote (m,n) = (%d,%d) tensor to %s\n' %
                    ( A.order, A.dim, opts.out ) )
        else:
            self.write( formatTensor( A ) )
        return EXIT_OK

    def do_bench( self, line ):
        """Solve a batch of seeded random tensors, one summary row each.
           Usage: bench [--n N] [--m M] [--count C] [--seed S]"""
        parser = self.flags( 'bench' )
        parser.add_argument( '--n', type=int, default=5 )
        parser.add_argument( '--m', type=int, default=3 )
        parser.add_argument( '--count', type=int, default=1 )
        parser.add_argument( '--seed', type=int, default=0 )
        opts = parser.parse_args( shlex.split( line ) )
        if opts.count < 1:
            raise ArgumentError( 'nnt bench: --count must be >= 1' )
        seeds = np.random.SeedSequence( opts.seed ).spawn( opts.count )
        rows = []
        converged = True
        for seed in seeds:
            B = randomTensor( opts.m, opts.n, seed )
            report = solve( B )
            converged = converged and report.converged
            rows.append( '(%d,%d), %d, %s, %s, %s\n' %
                         ( opts.n, opts.m, report.trace[ -1 ].k,
                           sigfig( report.rhoShifted ),
                           sigfig( report.finalGap, 3 ),
                           sigfig( report.residual, 3 ) ) )
        self.write( '(n,m), k, rho(A), gap, residual\n' )
        for row in rows:
            self.write( row )
        return EXIT_OK if converged else EXIT_NOTCONVERGED

    # pylint: enable=R0201


def main( argv=None, stdout=None ):
    """Entry point of the nnt command.
       argv: arguments without the program name (default sys.argv[1:])
       returns: exit code"""
    parser = FlagParser( prog='nnt', description='Spectral radius of '
                         'nonnegative tensors by row-sum smoothing.' )
    parser.add_argument( '-v', '--verbosity', choices=list( LEVELS ),
                         default='output', help='log level' )
    parser.add_argument( '--version', action='version',
                         version='nnt ' + VERSION )
    parser.add_argument( 'verb', help='solve, check, random, bench or help' )
    parser.add_argument( 'args', nargs=argparse.REMAINDER )
    try:
        opts = parser.parse_args( argv )
    except ArgumentError as e:
        error( 'Error: %s\n' % e )
        return EXIT_ERROR
    setLogLevel( opts.verbosity )
    line = ' '.join( [ opts.verb ] + [ shlex.quote( a ) for a in opts.args ] )
    result = CLI( stdout=stdout ).onecmd( line )
    return EXIT_OK if result is None else result
