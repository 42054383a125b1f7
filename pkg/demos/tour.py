"""A short walk through the library: build a few small quantum groups,
look at their root vector relations, and compare two of them.

Run with:  python demos/tour.py
"""

from __future__ import annotations

import os

from smallqg.braided import Braiding, mapphi_check
from smallqg.cli import format_group_alg
from smallqg.datum import Datum, load_triple_file
from smallqg.groups import AbelianGroup
from smallqg.isomorphy import decide, triple_to_json
from smallqg.kalgebra import u_alpha
from smallqg.quotients import RAlgebra, nichols_graded_dims
from smallqg.uqgroup import build_u, cauchy_check, format_uelem, verify_hopf

DATA = os.path.join(os.path.dirname(__file__), "data")


def load(name):
    return load_triple_file(os.path.join(DATA, name + ".json"))


def section(title):
    print()
    print(title)
    print("-" * len(title))


section("Taft algebra over Z/11")
d, lam, mu = load("taft11")
A = build_u(d, lam, mu)
print("dim =", A.dim)
rep = verify_hopf(A, samples=50, seed=0)
for line in rep.lines():
    print(" ", line)

section("A root vector relation over Z/121")
d, lam, mu = load("z121_mu5")
A = build_u(d, lam, mu)
x11 = A.power(A.x(0), 11)
print("x^11 =", format_uelem(A, x11))

section("The A_2 datum over (Z/121)^2")
d = Datum(AbelianGroup([121, 121]), [(1, 0), (0, 1)], [(22, -11), (-11, 22)], [[2, -1], [-1, 2]])
mu = {(1, 0): 1, (0, 1): 2}
for root in d.roots.order:
    print(f"u_{root} =", format_group_alg(u_alpha(d, mu, root)))

section("Nichols algebra of type A_2 with N = 5")
d5 = Datum(AbelianGroup([5, 5]), [(1, 0), (0, 1)], [(2, -1), (-1, 2)], [[2, -1], [-1, 2]])
R = RAlgebra(Braiding.from_datum(d5), 20)
dims = nichols_graded_dims(R, [5, 5, 5])
print("graded dims:", dims)
print("total:", sum(dims))

section("Twisting two braidings of type A_2")
b1 = Braiding.from_datum(load("a2_asym")[0])
b2 = Braiding.from_datum(load("a2_sym")[0])
bad = mapphi_check(b1, b2, 4)
print("identities up to degree 4:", "hold" if not bad else bad)

section("Isomorphism")
verdict, res = decide(load("taft11_auto"), load("taft11"))
print("taft11_auto vs taft11:", verdict)
for t in res:
    print(" ", triple_to_json(t))
verdict, _ = decide(load("taft11"), load("taft13"))
print("taft11 vs taft13:", verdict)
verdict, res = decide(load("z121_mu_scaled"), load("z121_mu5"))
print("mu scaled by 2^11:", verdict, triple_to_json(res[0])["s"])

section("Cauchy")
A = build_u(*load("sl2_11"))
for line in cauchy_check(A).lines():
    print(" ", line)
