"""High-precision reference values for the unit tests.

Run once with mpmath; the output is committed as tests/unit/oracle_values.hpp.
Every value here is computed independently of the C++ code: closed forms where
they exist, otherwise mpmath quadrature at 30 digits.

    python3 tests/oracle/derive_expected.py > tests/unit/oracle_values.hpp
"""

import mpmath as mp

mp.mp.dps = 30

entries = []


def emit(name, value, note):
    z = mp.mpc(value)
    entries.append((name, z, note))


def osc_quad(f, a, b, period):
    """Quadrature split at multiples of the oscillation period."""
    pts = [a]
    t = a
    while t + period < b:
        t += period
        pts.append(t)
    pts.append(b)
    return mp.quad(f, pts)


# Forward operator, exponential kernel.
x = mp.mpf(10)
emit("fwd_exp1_const_x10", 1 - mp.e ** (-x), "int_0^10 e^{-s} ds")
for xv in ["0.5", "7.3", "40"]:
    x = mp.mpf(xv)
    closed = (mp.sin(x) - mp.cos(x)) / 2 + mp.e ** (-x) / 2
    quad = osc_quad(lambda t: mp.sin(t) * mp.e ** (-(x - t)), 0, x, mp.pi)
    assert abs(closed - quad) < mp.mpf(10) ** -20
    emit("fwd_exp1_sin_x" + xv.replace(".", "p"), closed, "(sin x - cos x)/2 + e^{-x}/2")

# Forward operator, power-law kernels on sin (multiplicative).
for xv in ["3", "50", "1000"]:
    x = mp.mpf(xv)
    emit("fwd_M_sin_x" + xv, (mp.cos(1) - mp.cos(x)) / x, "(cos 1 - cos x)/x")
    m2 = 2 / x ** 2 * ((mp.sin(x) - x * mp.cos(x)) - (mp.sin(1) - mp.cos(1)))
    emit("fwd_M2_sin_x" + xv, m2, "(2/x^2)[sin t - t cos t]_1^x")
    mh = mp.mpf(1) / 2 * x ** mp.mpf(-0.5) * osc_quad(lambda t: mp.sin(t) / mp.sqrt(t), 1, x, mp.pi)
    emit("fwd_Mhalf_sin_x" + xv, mh, "(1/2) x^{-1/2} int_1^x sin t t^{-1/2} dt")
    # Second Cesaro mean: (1/x) int_1^x (cos 1 - cos t)/t dt
    h2 = (mp.cos(1) * mp.log(x) - (mp.ci(x) - mp.ci(1))) / x
    emit("fwd_H2_sin_x" + xv, h2, "(1/x)[cos 1 log x - Ci(x) + Ci(1)]")

# Dual operator.
emit("dual_exp1_expdecay_x1", mp.e ** -1 / 2, "int_1^inf e^{-t} e^{-(t-1)} dt")
for r in ["0.5", "1", "2"]:
    rr = mp.mpf(r)
    for xv in ["3", "50"]:
        x = mp.mpf(xv)
        val = rr * x ** rr * mp.quadosc(lambda t: mp.sin(t) * t ** (-rr - 1), [x, mp.inf], period=2 * mp.pi)
        emit("dual_M%s_sin_x%s" % (r.replace(".", "p"), xv), val, "r x^r int_x^inf sin t t^{-r-1} dt")

# Counterexample kernel: c e^{-u} (1 - e^{i a u}/(1 + i a)), c = (1 + a^2)/a^2.
def cex(a, u):
    a = mp.mpf(a)
    c = (1 + a * a) / (a * a)
    return c * mp.e ** (-u) * (1 - mp.e ** (1j * a * u) / (1 + 1j * a))


for u in ["0", "0.7", "3"]:
    emit("cex1_value_u" + u.replace(".", "p"), cex(1, mp.mpf(u)), "counterexample kernel, alpha = 1")
mass = mp.quad(lambda u: cex(1, u), [0, mp.inf])
emit("cex1_mass", mass, "int_0^inf of the counterexample kernel")
for xi in ["0", "0.5", "2", "-3"]:
    v = mp.quad(lambda u: cex(1, u) * mp.e ** (-1j * mp.mpf(xi) * u), [0, mp.inf])
    emit("cex1_fourier_xi" + xi.replace(".", "p").replace("-", "m"), v, "int cex(u) e^{-i xi u} du")

# Convolutions.
for u in ["0.25", "1", "4"]:
    uu = mp.mpf(u)
    emit("conv_exp1_exp2_u" + u.replace(".", "p"), 2 * (mp.e ** -uu - mp.e ** (-2 * uu)), "e1 * e2")
    emit("pow_exp1_2_u" + u.replace(".", "p"), uu * mp.e ** -uu, "e1 * e1")
    v = mp.quad(lambda s: cex(1, s) * mp.e ** (-(uu - s)), [0, uu])
    emit("conv_cex1_exp1_u" + u.replace(".", "p"), v, "cex(1) * e1")

# Composition: U_{e2} U_{e1} sin at x equals U_{e1*e2} sin.
for xv in ["3", "20"]:
    x = mp.mpf(xv)
    v = osc_quad(lambda t: mp.sin(t) * 2 * (mp.e ** (-(x - t)) - mp.e ** (-2 * (x - t))), 0, x, mp.pi)
    emit("compose_e1_e2_sin_x" + xv, v, "int_0^x sin t (e1*e2)(x - t) dt")

# Chirp under the exponential kernel: S_{e1} sin(t^2) at x = 2^6 .. 2^8.
for j in [6, 7, 8]:
    x = mp.mpf(2) ** j
    lo = x - 60
    n0 = int(mp.floor(lo * lo / mp.pi)) + 1
    n1 = int(mp.floor(x * x / mp.pi))
    pts = [lo] + [mp.sqrt(k * mp.pi) for k in range(n0, n1 + 1)] + [x]
    mp.mp.dps = 20
    v = mp.quad(lambda t: mp.sin(t * t) * mp.e ** (-(x - t)), pts)
    mp.mp.dps = 30
    emit("chirp_exp1_x%d" % (2 ** j), v, "int sin(t^2) e^{-(x-t)} dt")

# Continuity modulus bound for e1: 2 (1 - e^{-delta}).
for d in ["0.1", "0.01", "0.001"]:
    emit("continuity_exp1_d" + d.replace(".", "p"), 2 * (1 - mp.e ** (-mp.mpf(d))), "continuity bound, |f| <= 1")

# Discrete Cesaro means of a_n = (-1)^n and of a_n = 1 on odd n.
for n in [7, 1024, 2 ** 20 + 1]:
    emit("cesaro_alt_n%d" % n, mp.mpf(-1) / n if n % 2 else 0, "(1/n) sum (-1)^i")

print("#pragma once")
print("")
print("// Generated by tests/oracle/derive_expected.py (mpmath, 30 digits). Do not edit.")
print("")
print("#include <complex>")
print("")
print("namespace oracle {")
print("")
for name, z, note in entries:
    print("// %s" % note)
    print("inline const std::complex<double> %s{%s, %s};" % (name, mp.nstr(z.real, 20), mp.nstr(z.imag, 20)))
print("")
print("}  // namespace oracle")
