"""Slow reference implementations written straight from the definitions.

They share no code with lconj: groups are modelled with sympy permutations or
hand-rolled tuples, lattices with explicit order relations or Fractions.
"""

from fractions import Fraction
from functools import reduce
from itertools import product

from sympy.combinatorics import Permutation, PermutationGroup


class Model:
    def __init__(self, elements, mul, inv, lat_elements, le):
        self.G = list(elements)
        self.mul = mul
        self.inv = inv
        self.Lel = list(lat_elements)
        self.le = le
        self.bottom = next(a for a in self.Lel if all(le(a, b) for b in self.Lel))

    def meet(self, a, b):
        lows = [c for c in self.Lel if self.le(c, a) and self.le(c, b)]
        return next(c for c in lows if all(self.le(d, c) for d in lows))

    def join(self, a, b):
        ups = [c for c in self.Lel if self.le(a, c) and self.le(b, c)]
        return next(c for c in ups if all(self.le(c, d) for d in ups))

    def sup(self, values):
        return reduce(self.join, values, self.bottom)

    def conj(self, z, x):
        return self.mul(self.mul(z, x), self.inv(z))

    def point_conjugate(self, eta, a, z):
        return {x: self.meet(a, eta[self.conj(z, x)]) for x in self.G}

    def set_product(self, eta, nu):
        out = {x: self.bottom for x in self.G}
        for y, z in product(self.G, repeat=2):
            x = self.mul(y, z)
            out[x] = self.join(out[x], self.meet(eta[y], nu[z]))
        return out

    def point(self, a, x):
        return {g: (a if g == x else self.bottom) for g in self.G}

    def is_l_subgroup(self, eta):
        return all(self.le(self.meet(eta[x], eta[y]), eta[self.mul(x, y)]) for x, y in product(self.G, repeat=2)) \
            and all(self.le(eta[x], eta[self.inv(x)]) for x in self.G)

    def contained(self, eta, nu):
        return all(self.le(eta[x], nu[x]) for x in self.G)

    def is_normal(self, eta, mu):
        return all(self.le(self.meet(eta[y], mu[x]), eta[self.conj(x, y)]) for x, y in product(self.G, repeat=2))

    def normalizer_setproduct(self, eta, mu):
        out = {}
        for x in self.G:
            ok = [a for a in self.Lel if self.le(a, mu[x])
                  and self.set_product(self.point(a, x), eta) == self.set_product(eta, self.point(a, x))]
            out[x] = self.sup(ok)
        return out

    def normalizer_conjugacy(self, eta, mu):
        out = {}
        for x in self.G:
            ok = [a for a in self.Lel if self.le(a, mu[x]) and self.contained(self.point_conjugate(eta, a, x), eta)]
            out[x] = self.sup(ok)
        return out


# -- S4 over the reconstructed M ----------------------------------------------

M_UP = {"l": "lfabcdu", "f": "fdu", "a": "adu", "b": "bdu", "c": "cdu", "d": "du", "u": "u"}


def m_le(a, b):
    return b in M_UP[a]


def s4_model():
    perms = list(PermutationGroup([Permutation([1, 0, 2, 3]), Permutation([1, 2, 3, 0])]).elements)
    # right-to-left composition: (p q)(i) = p(q(i)), which is sympy's q*p
    return Model(perms, lambda p, q: q * p, lambda p: ~p, list(M_UP), m_le)


def cyc(*pts, n=4):
    """One cycle on points 1..n as a sympy permutation."""
    return Permutation([[p - 1 for p in pts]], size=n)


def s4_label(p):
    if p.is_Identity:
        return "e"
    return "".join("(" + " ".join(str(i + 1) for i in c) + ")" for c in p.cyclic_form)


def s4_conjugate():
    M = s4_model()
    gen = lambda *gs: set(PermutationGroup(list(gs)).elements)
    V4 = {Permutation(3), cyc(1, 2) * cyc(3, 4), cyc(1, 3) * cyc(2, 4), cyc(1, 4) * cyc(2, 3)}
    D1 = gen(cyc(2, 4), cyc(1, 2, 3, 4))
    D2 = gen(cyc(1, 2), cyc(1, 3, 2, 4))
    D3 = gen(cyc(2, 3), cyc(1, 3, 4, 2))
    mu = {x: ("u" if x in V4 else "d") for x in M.G}
    eta = {}
    for x in M.G:
        if x.is_Identity:
            eta[x] = "u"
        elif x in V4:
            eta[x] = "d"
        elif x in D1:
            eta[x] = "a"
        elif x in D2:
            eta[x] = "b"
        elif x in D3:
            eta[x] = "c"
        else:
            eta[x] = "l"
    return M, mu, eta, {"V4": V4, "D1": D1, "D2": D2, "D3": D3}


# -- D16 over [0, 1] ------------------------------------------------------------

def d16_mul(a, b):
    (f, k), (g, m) = a, b
    return ((f + g) % 2, ((-k if g else k) + m) % 8)


def d16_inv(a):
    f, k = a
    return a if f else (0, (-k) % 8)


def d16_label(a):
    f, k = a
    r = "" if k == 0 else ("r" if k == 1 else f"r^{k}")
    return ("s" + r) if f else (r or "e")


FRACTIONS = [Fraction(0), Fraction(1, 32), Fraction(1, 16), Fraction(1, 12), Fraction(1, 8),
             Fraction(1, 4), Fraction(1, 2), Fraction(1)]


def d16_normalizer():
    G = [(f, k) for f in (0, 1) for k in range(8)]
    M = Model(G, d16_mul, d16_inv, FRACTIONS, lambda a, b: a <= b)
    D8 = {(f, k) for f, k in G if k % 2 == 0}
    S = {(0, 0), (1, 0)}
    mu = {x: Fraction(1, 2) if x in D8 else Fraction(1, 8) for x in G}
    eta = {x: Fraction(1, 4) if x in S else (Fraction(1, 16) if x in D8 else Fraction(1, 32)) for x in G}
    return M, mu, eta


def frac_label(q):
    return str(q) if q not in (0, 1) else str(int(q))


def labelled(d, elem_label, val_label=str):
    return {elem_label(x): val_label(v) for x, v in d.items()}
