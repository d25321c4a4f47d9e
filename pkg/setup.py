#!/usr/bin/env python

from setuptools import setup

with open("README.md", "r") as fh:
    LONG_DESCRIPTION = fh.read()

setup(
    name = 'ptmoments',
    version = '0.1',
    description = 'Exact and sampled moments of partially transposed random subspace projectors',
    long_description = LONG_DESCRIPTION,
    long_description_content_type = 'text/markdown',
    license = 'MIT',
    classifiers = [
        'Development Status :: 3 - Alpha',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Intended Audience :: Science/Research',
        ],
    python_requires = '>=3.9',
    install_requires = [
        'numpy',
        'scipy',
        'pandas',
        'natsort'],
    packages = ['ptmoments'],
    test_suite = 'tests',
    entry_points = {
        'console_scripts': [
            'ptmoments=ptmoments.ptmoments:main'
            ],
        }
)
