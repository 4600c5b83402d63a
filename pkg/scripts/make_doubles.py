"""Generate exact modular data for the doubles of S3 and A4.

Objects of the double of a finite group G are pairs (conjugacy class of a,
irreducible character chi of the centralizer C(a)); the unnormalized
S-matrix is

    S[(a,chi),(b,rho)] = (|G| / (|C(a)||C(b)|)) *
        sum over g in G with a(gbg^-1) = (gbg^-1)a of
            chi(g b g^-1) * rho(g^-1 a g)

(the convention without complex conjugation; it is the one consistent with
twists theta = chi(a)/chi(1) under the balancing equation)

and the twist of (a, chi) is chi(a)/chi(1). Centralizer characters are
computed numerically by simultaneous diagonalization of the class algebra
and then snapped to Z[zeta3] (all values needed here live there).

Run from the repository root; writes the checked data into
src/fusionring/data/modular_data.json and a comparison report to
../notes/double_a4_check.txt (if that directory exists).
"""

import itertools
import json
import math
import os

import numpy as np

W = complex(-0.5, math.sqrt(3) / 2)  # primitive third root of unity


def perm_mult(p, q):
    """(p*q)(x) = p(q(x))"""
    return tuple(p[q[i]] for i in range(len(p)))


def perm_inv(p):
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def gen_group(gens):
    n = len(gens[0])
    e = tuple(range(n))
    elems = {e}
    frontier = [e]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = perm_mult(x, g)
            if y not in elems:
                elems.add(y)
                frontier.append(y)
    return sorted(elems)


def conj_classes(elems):
    elems_set = set(elems)
    seen = set()
    classes = []
    for x in elems:
        if x in seen:
            continue
        cls = sorted({perm_mult(perm_mult(g, x), perm_inv(g)) for g in elems})
        seen.update(cls)
        classes.append(cls)
    return classes


def centralizer(elems, a):
    return [g for g in elems if perm_mult(g, a) == perm_mult(a, g)]


def characters_of_group(elems):
    """Irreducible character functions via the class algebra (numeric)."""
    classes = conj_classes(elems)
    k = len(classes)
    index = {}
    for ci, cls in enumerate(classes):
        for x in cls:
            index[x] = ci
    # class constants a_{ijm}: products of class i and class j landing in class m
    mats = np.zeros((k, k, k))
    for i in range(k):
        for j in range(k):
            counts = {}
            for x in classes[i]:
                for y in classes[j]:
                    m = index[perm_mult(x, y)]
                    counts[m] = counts.get(m, 0) + 1
            for m, c in counts.items():
                mats[i, j, m] = c / len(classes[m])
    rng = np.random.default_rng(7)
    n_g = len(elems)
    for _ in range(64):
        r = rng.standard_normal(k)
        m = np.einsum("i,ijm->mj", r, mats)
        w, v = np.linalg.eig(m)
        diff = np.abs(w[:, None] - w[None, :])
        diff[np.eye(k, dtype=bool)] = np.inf
        if k > 1 and diff.min() < 1e-8:
            continue
        vinv = np.linalg.inv(v)
        ratios = np.empty((k, k), dtype=complex)  # ratios[chi, i] = |C_i| chi(g_i)/chi(1)
        ok = True
        for i in range(k):
            d = vinv @ mats[i].T @ v
            if np.abs(d - np.diag(np.diag(d))).max() > 1e-7:
                ok = False
                break
            ratios[:, i] = np.diag(d)
        if not ok:
            continue
        chars = []
        for row in ratios:
            s = sum(abs(row[i]) ** 2 / len(classes[i]) for i in range(k))
            deg = math.sqrt(n_g / s.real)
            deg = round(deg)
            values = {x: row[index[x]] * deg / len(classes[index[x]]) for x in elems}
            chars.append((deg, values))
        chars.sort(key=lambda c: (c[0], -sum(c[1].values()).real))
        return chars
    raise RuntimeError("could not separate class algebra spectrum")


def double_data(elems):
    classes = conj_classes(elems)
    objects = []  # (a, chi_values_dict, deg, centralizer_order)
    for cls in classes:
        a = cls[0]
        cent = centralizer(elems, a)
        for deg, chi in characters_of_group(cent):
            objects.append((a, chi, deg, len(cent)))
    n = len(objects)
    n_g = len(elems)
    s = np.zeros((n, n), dtype=complex)
    for x, (a, chi, dega, ca) in enumerate(objects):
        for y, (b, rho, degb, cb) in enumerate(objects):
            total = 0j
            for g in elems:
                gb = perm_mult(perm_mult(g, b), perm_inv(g))
                if perm_mult(a, gb) != perm_mult(gb, a):
                    continue
                ga = perm_mult(perm_mult(perm_inv(g), a), g)
                total += chi[gb] * rho[ga]
            s[x, y] = total * n_g / (ca * cb)
    twists = []
    for a, chi, deg, ca in objects:
        twists.append(chi[a] / deg)
    dims = [round((n_g // ca) * deg) for a, chi, deg, ca in objects]
    return objects, s, np.array(twists), dims


def snap_zw(z, tol=1e-7):
    """Write z as x + y*omega with integers x, y."""
    y = z.imag / (math.sqrt(3) / 2)
    x = z.real + y / 2
    xi, yi = round(x), round(y)
    assert abs(z - (xi + yi * W)) < tol, z
    return xi, yi


def enc_zw(z):
    x, y = snap_zw(z)
    if y == 0:
        return x
    parts = []
    if x:
        parts.append(str(x))
    if y == 1:
        parts.append("+zeta(3,1)" if parts else "zeta(3,1)")
    elif y == -1:
        parts.append("-zeta(3,1)")
    else:
        parts.append(f"{'+' if y > 0 and parts else ''}{y}*zeta(3,1)")
    return "".join(parts)


def snap_twist(z, tol=1e-7):
    for den in (1, 2, 3, 4, 6, 8, 12):
        for num in range(den):
            if abs(z - np.exp(2j * np.pi * num / den)) < tol:
                g = math.gcd(num, den)
                return (num // g if num else 0, den // g if num else 1)
    raise AssertionError(z)


def order_objects(s, twists, dims, want_dims, want_twists, want_s=None):
    """Find a permutation p with dims[p] = want_dims, twists[p] = want_twists,
    and (if given) minimal disagreement with want_s; exact S agreement is
    attempted first."""
    n = len(dims)
    groups = {}
    for i in range(n):
        key = (dims[i], snap_twist(twists[i]))
        groups.setdefault(key, []).append(i)
    want_keys = [(want_dims[i], want_twists[i]) for i in range(n)]
    slots = {}
    for pos, key in enumerate(want_keys):
        slots.setdefault(key, []).append(pos)
    if sorted(groups) != sorted(slots):
        raise AssertionError(f"block structure mismatch: {sorted(groups)} vs {sorted(slots)}")
    keys = sorted(groups)
    choices = [itertools.permutations(groups[k]) for k in keys]
    best = None
    for assignment in itertools.product(*choices):
        p = [None] * n
        for k, perm in zip(keys, assignment):
            for pos, i in zip(slots[k], perm):
                p[pos] = i
        p = list(p)
        if want_s is None:
            return p, 0
        mism = int(np.sum(np.abs(s[np.ix_(p, p)] - want_s) > 1e-6))
        if best is None or mism < best[1]:
            best = (p, mism)
        if mism == 0:
            return best
    return best


def main():
    here = os.path.dirname(os.path.abspath(__file__))
    data_dir = os.path.join(here, "..", "src", "fusionring", "data")
    notes_dir = os.path.join(here, "..", "..", "notes")

    out = {}
    report_lines = []

    # ---- double of S3
    s3 = gen_group([(1, 0, 2), (1, 2, 0)])
    objects, s, twists, dims = double_data(s3)
    reference_s3 = np.array([
        [1, 1, 2, 2, 2, 2, 3, 3],
        [1, 1, 2, 2, 2, 2, -3, -3],
        [2, 2, -2, 4, -2, -2, 0, 0],
        [2, 2, 4, -2, -2, -2, 0, 0],
        [2, 2, -2, -2, 4, -2, 0, 0],
        [2, 2, -2, -2, -2, 4, 0, 0],
        [3, -3, 0, 0, 0, 0, 3, -3],
        [3, -3, 0, 0, 0, 0, -3, 3],
    ], dtype=complex)
    want_dims = [1, 1, 2, 2, 2, 2, 3, 3]
    want_t = [(0, 1), (0, 1), (2, 3), (1, 3), (0, 1), (0, 1), (0, 1), (1, 2)]
    p, mism = order_objects(s, twists, dims, want_dims, want_t, reference_s3)
    s_p = s[np.ix_(p, p)]
    report_lines.append(f"Z(Rep(S3)): mismatched entries vs reference matrix: {mism}")
    assert mism == 0, "double of S3 disagrees with the reference matrix"
    out["Z(Rep(S3))"] = {
        "S": [[enc_zw(z) for z in row] for row in s_p],
        "T": [list(t) for t in want_t],
    }

    # ---- double of A4
    a4 = gen_group([(1, 0, 3, 2), (1, 2, 0, 3)])
    objects, s, twists, dims = double_data(a4)
    AL = -4 * W ** 2
    w = W
    reference_a4 = np.array([
        [1, 1, 1, 3, 4, 4, 4, 3, 3, 3, 3, 4, 4, 4],
        [1, 1, 1, 3, 4 * w, 4 * w, 4 * w, 3, 3, 3, 3, AL, AL, AL],
        [1, 1, 1, 3, AL, AL, AL, 3, 3, 3, 3, 4 * w, 4 * w, 4 * w],
        [3, 3, 3, 9, 0, 0, 0, -3, -3, -3, -3, 0, 0, 0],
        [4, 4 * w, AL, 0, 4, 4 * w, AL, 0, 0, 0, 0, 4, 4 * w, 4],
        [4, 4 * w, AL, 0, 4 * w, AL, 4, 0, 0, 0, 0, 4, 4, 4 * w],
        [4, 4 * w, AL, 0, AL, 4, 4 * w, 0, 0, 0, 0, 4 * w, 4, 4],
        [3, 3, 3, -3, 0, 0, 0, 9, -3, -3, -3, 0, 0, 0],
        [3, 3, 3, -3, 0, 0, 0, -3, -3, -3, 9, 0, 0, 0],
        [3, 3, 3, -3, 0, 0, 0, -3, -3, 9, -3, 0, 0, 0],
        [3, 3, 3, -3, 0, 0, 0, -3, 9, -3, -3, 0, 0, 0],
        [4, AL, 4 * w, 3, 4, AL, 4 * w, 0, 0, 0, 0, 4, AL, 4 * w],
        [4, AL, 4 * w, 3, 4 * w, 4, AL, 0, 0, 0, 0, AL, 4 * w, 4],
        [4, AL, 4 * w, 3, AL, 4 * w, 4, 0, 0, 0, 0, 4 * w, 4, AL],
    ], dtype=complex)
    want_dims = [1, 1, 1, 3, 4, 4, 4, 3, 3, 3, 3, 4, 4, 4]
    want_t = [(0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (2, 3), (1, 3),
              (0, 1), (1, 2), (0, 1), (1, 2), (0, 1), (1, 3), (2, 3)]
    p, mism = order_objects(s, twists, dims, want_dims, want_t, reference_a4)
    s_p = s[np.ix_(p, p)]
    report_lines.append(f"Z(Rep(A4)): mismatched entries vs reference matrix: {mism}")
    bad = np.argwhere(np.abs(s_p - reference_a4) > 1e-6)
    for i, j in bad:
        report_lines.append(
            f"  reference[{i}][{j}] = {reference_a4[i, j]:.6g} but computed = {s_p[i, j]:.6g}")
    # sanity: computed matrix must itself be symmetric with the right dims
    assert np.abs(s_p - s_p.T).max() < 1e-9
    assert np.abs(s_p[0].real - np.array(want_dims)).max() < 1e-9
    out["Z(Rep(A4))"] = {
        "S": [[enc_zw(z) for z in row] for row in s_p],
        "T": [list(t) for t in want_t],
    }

    path = os.path.join(data_dir, "modular_data.json")
    with open(path, "w") as fh:
        json.dump(out, fh, indent=1)
    print(f"wrote {path}")
    report = "\n".join(report_lines) + "\n"
    print(report)
    if os.path.isdir(notes_dir):
        with open(os.path.join(notes_dir, "double_a4_check.txt"), "w") as fh:
            fh.write(report)


if __name__ == "__main__":
    main()
