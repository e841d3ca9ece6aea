"""Built-in catalog of structure specs.

Each entry is a complete spec file; `courant-lab catalog NAME` prints it
and `courant-lab verify-all` runs every entry.  The entries cover the
recurring examples of the library: the zero-pairing connection, the curved
line bundle over the plane, the point Lie algebra with its Manin pair, the
graph triples of a bundle map into T*M, foliations, the coadjoint action,
the Bott quotient, and three deliberately broken fixtures (expected-fail
lines are marked xfail and keep their witnesses).
"""

from __future__ import annotations

from typing import Dict

ENTRIES: Dict[str, str] = {}


def _entry(name: str, text: str) -> None:
    ENTRIES[name] = text.strip() + "\n"


_entry("trivial", """
# Any ordinary connection is a Dorfman connection for the zero pairing.
[patch]
coords = x

[bundle.Q]
frame = q1

[bundle.B]
frame = b1

[anchor.rhoQ]
bundle = Q
q1 = Dx

[bracket.Q]
bundle = Q
anchor = rhoQ
antisymmetric = yes

[dorfman.T]
pairing = zero
bracket = Q
b = B
q1, b1 = x*b1

[checks]
anchor-compat = Q
dorfman-axioms = T
""")

_entry("line-bundle-r2", """
# Rank-1 bundle over the plane with a curved connection; the standard
# Dorfman connection, its curvature, and the splitting theorems.  The
# full/zero triple is not Dirac: its failure witnesses the curvature.
[patch]
coords = x1, x2

[bundle.E]
frame = eps

[connection.nabla]
bundle = E
x2, eps = x1*eps

[dorfman.Delta]
e = E
standard-of = nabla

[subbundle.U]
ambient = TM+E*
span = Dx1 ; Dx2 ; epss

[subbundle.K]
ambient = E+T*M
span =

[checks]
dorfman-axioms = Delta
duality = Delta
curvature = Delta
skew = Delta
splitting-theorems = Delta
xfail dirac = Delta, U, K
xfail geometric-dirac = Delta, U, K
""")

_entry("point-bialgebroid", """
# The 2-dimensional non-abelian Lie algebra over a point with the zero
# connection: the smallest complete run of the Lie-algebroid layer and the
# Manin-pair correspondence.
[patch]
coords =

[bundle.A]
frame = e1, e2

[bracket.A]
bundle = A
antisymmetric = yes
e1, e2 = e2

[dorfman.Delta]
e = A

[subbundle.U]
ambient = TM+A*
span = e1s ; e2s

[subbundle.K]
ambient = A+T*M
span =

[checks]
lie = A
dorfman-axioms = Delta
dirac = Delta, U, K
geometric-dirac = Delta, U, K
la-dirac = A, Delta, U, K
section4 = A, Delta
identity-lemmas = A, Delta, U, K
ruth-compat = A, Delta, U, K
k-algebroid = A, Delta, U, K
manin-pair = A, Delta, U, K
roundtrip = A, Delta, U, K
linear-poisson = A
ta-generators = A, Delta
""")

_entry("im2form", """
# Graph triple of the identity map E -> T*M with a flat connection: the
# associated double vector subbundle is a Dirac structure, algebraically
# and on the total space.
[patch]
coords = x1, x2

[bundle.E]
frame = c1, c2

[hom.sigma]
source = E
target = T*M
c1 = dx1
c2 = dx2

[connection.nabla]
bundle = E

[dorfman.Delta]
e = E
im2form-of = sigma, nabla

[subbundle.U]
ambient = TM+E*
span = Dx1 - c1s ; Dx2 - c2s

[subbundle.K]
ambient = E+T*M
span = c1 + dx1 ; c2 + dx2

[checks]
dorfman-axioms = Delta
dirac = Delta, U, K
geometric-dirac = Delta, U, K
bracket-well-defined = Delta, U, K
splitting-theorems = Delta
canonical-form = sigma, nabla
""")

_entry("foliation", """
# A coordinate line field plus the dual of a rank-1 bundle: the simplest
# foliation-type Dirac triple, for a flat connection.
[patch]
coords = x1, x2

[bundle.F]
frame = eps

[connection.nabla]
bundle = F

[dorfman.Delta]
e = F
standard-of = nabla

[subbundle.U]
ambient = TM+F*
span = Dx1 ; epss

[subbundle.K]
ambient = F+T*M
span = dx2

[checks]
dorfman-axioms = Delta
dirac = Delta, U, K
geometric-dirac = Delta, U, K
""")

_entry("im2form-zero", """
# The tangent algebroid of the plane with the zero bundle map: the triple
# (TM + 0, A + 0, standard flat Delta) is LA-Dirac and its Manin pair is
# the standard Courant algebroid.
[patch]
coords = x1, x2

[bundle.A]
frame = a1, a2

[anchor.rho]
bundle = A
a1 = Dx1
a2 = Dx2

[bracket.A]
bundle = A
anchor = rho
antisymmetric = yes

[hom.sigma0]
source = A
target = T*M

[connection.nabla]
bundle = A

[dorfman.Delta]
e = A
standard-of = nabla

[subbundle.U]
ambient = TM+A*
span = Dx1 ; Dx2

[subbundle.K]
ambient = A+T*M
span = a1 ; a2

[checks]
lie = A
la-dirac = A, Delta, U, K
dirac = Delta, U, K
geometric-dirac = Delta, U, K
section4 = A, Delta
identity-lemmas = A, Delta, U, K
ruth-compat = A, Delta, U, K
k-algebroid = A, Delta, U, K
manin-pair = A, Delta, U, K
roundtrip = A, Delta, U, K
standard-iso = A, Delta, U, K, sigma0
ta-generators = A, Delta
""")

_entry("nonholonomic", """
# A constraint line field inside the graph construction for the identity
# map on a rank-2 bundle, with a curved connection: still Dirac.
[patch]
coords = x1, x2

[bundle.P]
frame = p1, p2

[hom.sigma]
source = P
target = T*M
p1 = dx1
p2 = dx2

[connection.nabla]
bundle = P
x1, p1 = x2*p2

[dorfman.Delta]
e = P
im2form-of = sigma, nabla

[subbundle.U]
ambient = TM+P*
span = Dx1 - p1s

[subbundle.K]
ambient = P+T*M
span = p1 + dx1 ; p2 ; dx2

[checks]
dorfman-axioms = Delta
dirac = Delta, U, K
geometric-dirac = Delta, U, K
splitting-theorems = Delta
""")

_entry("bott-foliation", """
# The standard Courant algebroid over the plane and the quotient
# connection along the isotropic line spanned by (d/dx1, 0).
[patch]
coords = x1, x2

[courant.C]
standard = yes

[subbundle.K]
ambient = TM+T*M
span = Dx1

[checks]
courant-axioms = C
bott-dorfman = C, K
""")

_entry("coadjoint-point", """
# The coadjoint-type connection of a Lie algebra acting on its dual.
[patch]
coords =

[bundle.g]
frame = e1, e2

[bracket.g]
bundle = g
antisymmetric = yes
e1, e2 = e2

[dorfman.L]
lie-derivative-of = g

[checks]
lie = g
dorfman-axioms = L
duality = L
curvature = L
""")

_entry("broken-dorfman", """
# A symbol perturbed without updating the dual bracket: axiom (c) fails
# with a symbolic witness.
[patch]
coords = x1, x2

[bundle.E]
frame = eps

[connection.nabla]
bundle = E
x2, eps = x1*eps

[dorfman.Delta]
e = E
standard-of = nabla
keep-bracket = yes
shift Dx1, eps = dx1

[checks]
xfail dorfman-axioms = Delta
""")

_entry("broken-bott", """
# The quotient construction rejects a non-isotropic subbundle.
[patch]
coords = x1, x2

[courant.C]
standard = yes

[subbundle.K]
ambient = TM+T*M
span = Dx1 + dx1

[checks]
xfail bott-dorfman = C, K
""")

_entry("broken-manin", """
# A Manin pair whose core bracket is perturbed: the recovery of the
# triple reports the broken bracket condition instead of crashing.
[patch]
coords =

[bundle.A]
frame = e1, e2

[bracket.A]
bundle = A
antisymmetric = yes
e1, e2 = e2

[dorfman.Delta]
e = A

[subbundle.U]
ambient = TM+A*
span = e1s ; e2s

[subbundle.K]
ambient = A+T*M
span =

[checks]
xfail recover-perturbed = A, Delta, U, K
""")


def catalog_names():
    return sorted(ENTRIES)


def catalog_text(name: str) -> str:
    if name not in ENTRIES:
        raise KeyError(name)
    return ENTRIES[name]
