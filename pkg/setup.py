#!/usr/bin/env python
import pathlib
import sys

from setuptools import setup, find_packages

CURRENT_PYTHON = sys.version_info[:2]
REQUIRED_PYTHON = (3, 8)

# This check and everything above must remain compatible with Python 3.6.
if CURRENT_PYTHON < REQUIRED_PYTHON:
    sys.stderr.write(f"""
    ==========================
    Unsupported Python version
    ==========================
    This version of lensmimo requires Python {REQUIRED_PYTHON}, but you're trying to
    install it on Python {CURRENT_PYTHON}.
    Make sure you have pip >= 9.0 and setuptools >= 24.2, then try again:
        $ python -m pip install --upgrade pip setuptools
        $ python -m pip install lensmimo
    """)
    sys.exit(1)

# The directory containing this file
HERE = pathlib.Path(__file__).parent
VERSION: str = "1.0.0"

# The text of the README file
README = (HERE / "README.md").read_text(encoding="utf-8")

# the setup
setup(
    name='lensmimo',
    version=VERSION,
    description='Link-level simulator comparing lens antenna arrays with UPA based MIMO-OFDM at mmWave.',
    long_description=README,
    long_description_content_type="text/markdown",
    author='Lens MIMO Authors',
    license='Apache 2.0 License',
    keywords='mmWave;MIMO;lens antenna array;path division multiplexing;OFDM;hybrid beamforming',
    packages=find_packages(exclude=('docs', 'tests', 'samples', 'examples', 'env')),
    include_package_data=True,
    package_data={
        'lensmimo': ['scenarios/*.json']
    },
    install_requires=[
        "numpy>=1.17.0",
        "scipy>=1.5.0"
    ],
    extras_require={
    },
    tests_require=(
        'pytest',
        'pytest-cov',
        'coverage'
    ),
    entry_points={
        'console_scripts': [
            'lensmimo = lensmimo.cli:main'
        ]
    },
    classifiers=[
        # Status
        'Development Status :: 4 - Beta',
        # Audience
        'Intended Audience :: Science/Research',
        'Intended Audience :: Telecommunications Industry',
        # Python Version
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
        # Topic
        'Topic :: Scientific/Engineering',
        'Topic :: Communications'
    ]
)
