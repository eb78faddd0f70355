"""Independent oracles for small fixtures used by the C++ unit tests.

Pearson uses exact rational arithmetic; Spearman ranks are enumerated by
brute force (count of smaller values plus half the tie group). The greedy
sampler example is simulated directly from the Shannon formula over
explicit probability lists.
"""
from fractions import Fraction
import math


def pearson_exact(x, y):
    n = len(x)
    fx = [Fraction(v).limit_denominator(10**9) for v in x]
    fy = [Fraction(v).limit_denominator(10**9) for v in y]
    mx, my = sum(fx) / n, sum(fy) / n
    sxy = sum((a - mx) * (b - my) for a, b in zip(fx, fy))
    sxx = sum((a - mx) ** 2 for a in fx)
    syy = sum((b - my) ** 2 for b in fy)
    return float(sxy) / math.sqrt(float(sxx) * float(syy))


def ranks_bruteforce(v):
    out = []
    for a in v:
        less = sum(1 for b in v if b < a)
        equal = sum(1 for b in v if b == a)
        out.append(less + (equal + 1) / 2.0)
    return out


def shannon(counts):
    m = sum(counts.values())
    return -sum(c / m * math.log(c / m) for c in counts.values() if c)


def add(a, b):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + v
    return out


if __name__ == "__main__":
    x = [1.0, 2.5, 3.0, 4.2, 5.0, 6.1, 7.3, 8.0, 9.4, 10.0]
    y = [2.1, 2.9, 3.2, 5.5, 4.8, 7.0, 6.5, 9.1, 9.0, 11.7]
    print("pearson10 =", repr(pearson_exact(x, y)))

    tx = [3.0, 1.0, 4.0, 1.0, 5.0, 9.0, 2.0, 6.0, 5.0, 3.0]
    ty = [2.0, 7.0, 1.0, 8.0, 2.0, 8.0, 1.0, 8.0, 2.0, 8.0]
    rx, ry = ranks_bruteforce(tx), ranks_bruteforce(ty)
    print("ranks x =", rx)
    print("ranks y =", ry)
    print("spearman_ties =", repr(pearson_exact(rx, ry)))

    a, b = {"a": 6, "b": 4}, {"a": 4, "b": 6}
    print("merge H1:", shannon(a), shannon(b), shannon(add(a, b)))

    # Greedy example: initial empty, E=[2], S=4.
    docs = [("d1", {"a": 3}), ("d2", {"b": 1, "c": 1}), ("d3", {"a": 1, "b": 1})]
    print("gains from empty:", [(d, shannon(c)) for d, c in docs])
    w = {"b": 1, "c": 1}
    print("gain d3 after d2:", shannon(add(w, {"a": 1, "b": 1})) - shannon(w))
    print("final H:", shannon(add(w, {"a": 1, "b": 1})))
    print("optimum over subsets with >=4 tokens:")
    import itertools
    for r in range(1, 4):
        for sub in itertools.combinations(docs, r):
            tot = sum(sum(c.values()) for _, c in sub)
            if tot >= 4:
                m = {}
                for _, c in sub:
                    m = add(m, c)
                print("  ", [d for d, _ in sub], tot, shannon(m))
