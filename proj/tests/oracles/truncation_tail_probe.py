#!/usr/bin/env python3
"""Relative tail |S_B - S_{B+50}| / |S_{B+50}| of the plus-sharp series.

S_n is the n-term partial sum and B = floor(b sqrt(a/d)). Evaluated at the
seed za and at the located zero of each of the nine searches, with the b used
there (15 for zeros 1-5, 20 for zeros 6-9). The "noise" column is the double
precision cancellation floor, max|term| * 1e-16 / |S|.
"""

import math

import mpmath as mp

mp.mp.dps = 30
A, D = 750, 2


def terms(k, n):
    t = mp.mpf(1)
    out = [t]
    for j in range(1, n):
        if j == 1:
            r = 1 + mp.exp(-k / A)
        else:
            r = (1 - mp.exp(-(j + 2 * k - 1) / A)) / (1 - mp.exp(-(j + k - 1) / A))
        r *= (1 - mp.exp((j + k) / A)) / (1 - mp.exp(mp.mpf(j) / A))
        r *= (mp.exp(D * (k + j - 1) ** 2 / (4 * A)) + 1) / (mp.exp(D * (k + j) ** 2 / (4 * A)) + 1)
        t *= r
        out.append(t)
    return out


SEARCHES = [
    (0.1303 + 14.1465j, 0.1304 + 14.1450j, 15),
    (0.3504 + 21.0771j, 0.3514 + 21.0702j, 15),
    (0.5745 + 24.9643j, 0.5641 + 24.9586j, 15),
    (0.9134 + 30.4077j, 0.9046 + 30.4014j, 15),
    (1.0998 + 33.0854j, 1.1051 + 33.0341j, 15),
    (1.7675 + 38.1895j, 1.6449 + 37.9659j, 20),
    (1.9141 + 40.7816j, 1.9080 + 40.8119j, 20),
    (2.4497 + 43.3138j, 2.2860 + 43.2485j, 20),
    (3.1103 + 47.5578j, 2.9259 + 47.8424j, 20),
]


def main():
    for n, (za, z, b) in enumerate(SEARCHES, start=1):
        for label, point in (("za", za), ("z ", z)):
            k = mp.mpc(point.real, point.imag)
            big_b = math.floor(b * math.sqrt(A / D))
            ts = terms(k, big_b + 50)
            s_b = mp.fsum(ts[:big_b])
            s_tail = mp.fsum(ts)
            peak = max(abs(t) for t in ts)
            print("%d %s b=%d rel tail %s  noise %s" % (
                n, label, b, mp.nstr(abs(s_b - s_tail) / abs(s_tail), 3),
                mp.nstr(peak * 1e-16 / abs(s_tail), 3)))


if __name__ == "__main__":
    main()
