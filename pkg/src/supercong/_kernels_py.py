"""Pure-Python inner loops.  The compiled module mirrors these signatures exactly."""

from itertools import product


def _split(x, p):
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v, x


def hyper_sum_mod(num, den, scale_val, unit_num, unit_den, n, p, s):
    """Sum_{k<=n} t_k mod p^s for t_0 = 1, t_{k+1} = t_k * c * prod(a*k+b) / prod(a*k+b).

    ``num``/``den`` are lists of integer pairs (a, b) for the linear factors
    a*k + b; the scale is c = p^scale_val * unit_num / unit_den with both
    integers prime to p.  Returns (residue, shift) where
    shift = max(0, -min_k val(t_k)).  Terms are accumulated mod p^(s + shift);
    residue = -1 signals that the total was not divisible by p^shift.
    """
    vals = [0]
    v = 0
    last = n
    for j in range(n):
        dv = scale_val
        stop = False
        for a, b in num:
            x = a * j + b
            if x == 0:
                stop = True
                break
            dv += _split(x, p)[0]
        if stop:
            last = j
            break
        for a, b in den:
            x = a * j + b
            if x == 0:
                raise ZeroDivisionError("denominator factor vanishes")
            dv -= _split(x, p)[0]
        v += dv
        vals.append(v)
    shift = max(0, -min(vals))
    K = s + shift
    M = p**K
    pw = [pow(p, e, M) for e in range(K)]
    uc = unit_num * pow(unit_den, -1, M) % M
    # numerator of the running sum over the running common denominator
    P = 1
    Q = 1
    S = 0
    for j in range(last + 1):
        e = vals[j] + shift
        if e < K:
            S = (S + pw[e] * P) % M
        if j == last:
            break
        un = uc
        for a, b in num:
            un = un * _split(a * j + b, p)[1] % M
        ud = 1
        for a, b in den:
            ud = ud * _split(a * j + b, p)[1] % M
        P = P * un % M
        S = S * ud % M
        Q = Q * ud % M
    tot = S * pow(Q, -1, M) % M
    if shift and tot % pw[shift]:
        return -1, shift
    return tot // p**shift, shift


def char_table(p):
    t = [-1] * p
    t[0] = 0
    for x in range(1, (p + 1) // 2):
        t[x * x % p] = 1
    return t


def cubic_char_sum(c3, c2, c1, c0, p):
    """Sum over x in F_p of the quadratic character of c3 x^3 + c2 x^2 + c1 x + c0."""
    chi = char_table(p)
    total = 0
    for x in range(p):
        total += chi[(((c3 * x + c2) * x + c1) * x + c0) % p]
    return total


def affine_char_sum(r, lam, p):
    """Sum over X in F_p^r of chi(X_1..X_r (X_1-X_2)..(X_{r-1}-X_r)(X_r - lam X_1))."""
    chi = char_table(p)
    total = 0
    for X in product(range(p), repeat=r):
        f = 1
        for x in X:
            f = f * x % p
        for i in range(r - 1):
            f = f * (X[i] - X[i + 1]) % p
        f = f * (X[r - 1] - lam * X[0]) % p
        total += chi[f]
    return total
