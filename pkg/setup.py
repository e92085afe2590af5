"""
Setup of ctreepy python codebase
Author: ctreepy developers
"""
from setuptools import setup

requirements = [
    'numpy',
    'scipy',
    'PyYAML',
]

test_requirements = [
    'hypothesis',
]

setup(name='ctreepy',
    version='0.1.0',
    description='Checking tree 3-SAT procedure, exact oracles and counterexample family',
    author='ctreepy developers',
    package_dir = {'': '.'},
    packages=['ctreepy'],
    install_requires=requirements,
    tests_require=test_requirements,
    extras_require={'test': test_requirements},
    test_suite='test',
    entry_points={
        'console_scripts': ['ctreepy-refute=ctreepy.harness:main'],
    },
)
