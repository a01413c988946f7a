"""Exact computations with codimension-one foliations in positive characteristic.

The package is organised bottom-up:

- ``rings``: coefficient arithmetic (prime fields, their extensions, Z, Q,
  and monogenic number rings) together with reduction modulo primes.
- ``mpoly``: sparse multivariate polynomials and rational functions over
  any of those coefficient rings.
- ``exterior``: differential forms, vector fields, wedge/d/contraction and
  p-th power derivations on affine charts.
- ``cartier``: the Cartier operator on closed forms.
- ``foliation``: p-curvature, degeneracy divisors, closed defining forms,
  kernel distributions and invariant hypersurfaces.
- ``geommaps``: pullbacks, ramification and differents.
- ``models``: integral models and prime scans.
- ``distmin``: minimal-degree subdistribution search by exact linear algebra.
- ``cli``: the command line front end.
"""

__version__ = "0.1.0"
