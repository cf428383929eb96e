#!/usr/bin/env python

"Setuptools params"

from setuptools import setup, find_packages
from os.path import join

# Get version number from source tree
import sys
sys.path.append( '.' )
from nntensor import VERSION

scripts = [ join( 'bin', filename ) for filename in [ 'nnt' ] ]

modname = distname = 'nntensor'

setup(
    name=distname,
    version=VERSION,
    description='Spectral radius of nonnegative tensors by row-sum smoothing',
    packages=find_packages( exclude=[ 'examples', 'examples.*' ] ),
    long_description="""
        nntensor computes the spectral radius and positive eigenvector
        of nonnegative tensors with a diagonal-similarity smoothing
        iteration that carries certified lower and upper bounds at
        every step.  It also decides irreducibility and cross-checks
        results against a multilinear power iteration.
        """,
    classifiers=[
          "License :: OSI Approved :: BSD License",
          "Programming Language :: Python :: 3",
          "Development Status :: 4 - Beta",
          "Intended Audience :: Science/Research",
          "Topic :: Scientific/Engineering :: Mathematics",
    ],
    keywords='tensor eigenvalue spectral radius Perron-Frobenius',
    license='BSD',
    python_requires='>=3.8',
    install_requires=[
        'setuptools',
        'numpy>=1.17'
    ],
    extras_require={
        'test': [ 'hypothesis' ]
    },
    scripts=scripts,
)
