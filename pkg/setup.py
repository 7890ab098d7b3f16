#!/usr/bin/env python
# -*- coding: utf-8 -*-

from setuptools import setup

with open('README.rst') as readme_file:
    readme = readme_file.read()

with open('HISTORY.rst') as history_file:
    history = history_file.read()

requirements = ['numpy', 'scipy', 'pyyaml', 'jsonpickle', 'joblib']

test_requirements = ['pytest', 'pytest-cov', 'hypothesis']

setup(
    name='gwtree',
    version='0.1.0',
    description="Galton-Watson trees conditioned on reaching a level, and the cost of searching them",
    long_description=readme + '\n\n' + history,
    packages=[
        'gwtree',
    ],
    package_dir={'gwtree':
                 'gwtree'},
    include_package_data=True,
    install_requires=requirements,
    entry_points={
        'console_scripts': [
            'gwtree=gwtree.cli:main',
        ],
    },
    license="MIT license",
    zip_safe=False,
    keywords='galton-watson branching-process conditioning search',
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Natural Language :: English',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
    python_requires='>=3.8',
    test_suite='tests',
    tests_require=test_requirements
)
