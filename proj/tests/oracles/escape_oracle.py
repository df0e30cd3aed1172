# Direct-iteration oracle for escape rates: log|z_n| / d^n in high precision.
import mpmath as mp
mp.mp.dps = 60

def G(coeffs, z, n=40):
    d = len(coeffs) - 1
    z = mp.mpc(z)
    for k in range(1, n + 1):
        w = mp.mpc(0)
        for a in coeffs:
            w = w * z + a
        z = w
        if abs(z) > mp.mpf(10) ** 40:
            return mp.log(abs(z)) / mp.mpf(d) ** k + mp.log(abs(coeffs[0])) / (d - 1) / mp.mpf(d) ** k
    return mp.mpf(0)

print("z^2-6 at 0:", G([1, 0, -6], 0))
print("z^2-6 at i:", G([1, 0, -6], 1j))
print("z^2-7 at 0:", G([1, 0, -7], 0))
print("1000(z^2-1) at 0:", G([1000, 0, -1000], 0))
print("z^2 at 2:", G([1, 0, 0], 2))
print("0.01z^3+z^2 at -200/3:", G([0.01, 1, 0, 0], mp.mpf(-200) / 3))
print("0.001z^3+z^2 at -2000/3:", G([0.001, 1, 0, 0], mp.mpf(-2000) / 3))
# basepoint: max over unit circle
for name, c in [("z^2-6", [1, 0, -6]), ("z^2-1e6", [1, 0, -10**6])]:
    best = max((G(c, mp.expjpi(2 * mp.mpf(k) / 2048)), k) for k in range(2048))
    print(name, "basepoint", best, "M", G(c, 0), "ratio", best[0] / G(c, 0))
