from setuptools import setup, find_packages
import os

# https://github.com/readthedocs/readthedocs.org/issues/5512#issuecomment-475073310
on_rtd = os.environ.get('READTHEDOCS') == 'True'
if on_rtd:
    INSTALL_REQUIRES = []
else:
    INSTALL_REQUIRES = ['numpy', 'scipy', 'numba', 'pandas>=1.5']

setup(
      name='sta_phase',
      version='0.3.0',
      packages=find_packages(exclude=['tests']),
      install_requires=INSTALL_REQUIRES,
      extras_require={'test': ['pytest']},
      entry_points={
          'console_scripts': ['sta-phase=sta_phase.cli:main'],
      },
      )
