"""Writes plane_wave.json and plane_wave_expected.json.

psi = u exp(-i p.x), so d_mu psi = -i p_mu u. The expected symmetric tensor is
evaluated directly from Dirac matrices, all indices lower.
"""
import json
import numpy as np

s1 = np.array([[0, 1], [1, 0]], complex)
s2 = np.array([[0, -1j], [1j, 0]], complex)
s3 = np.array([[1, 0], [0, -1]], complex)
I2, Z2 = np.eye(2), np.zeros((2, 2))
g = [np.block([[I2, Z2], [Z2, -I2]])] + [np.block([[Z2, s], [-s, Z2]]) for s in (s1, s2, s3)]
eta = np.diag([1.0, -1, -1, -1])
g_lower = [eta[m, m] * g[m] for m in range(4)]

u = np.array([0.7 + 0.2j, -0.3 + 0.5j, 0.1 - 0.4j, 0.25 + 0.05j])
p = np.array([1.3, -0.4, 0.9, 0.2])  # lower index
A = [0.0, 0.0, 0.0, 0.0]
du = [-1j * p[m] * u for m in range(4)]

bar = lambda v: v.conj() @ g[0]
T = np.zeros((4, 4), complex)
for m in range(4):
    for n in range(4):
        T[m, n] = -0.5j * (bar(u) @ g_lower[m] @ du[n] - bar(du[n]) @ g_lower[m] @ u)
theta = 0.5 * (T + T.T)

pair = lambda z: [float(z.real), float(z.imag)]
jet = {
    "psi": [pair(z) for z in u],
    "dpsi": [[pair(z) for z in d] for d in du],
    "A": A,
    "dA": [0.0] * 16,
    "mass": 1.0,
    "charge": 1.0,
}
with open("plane_wave.json", "w") as f:
    json.dump(jet, f, indent=1)
with open("plane_wave_expected.json", "w") as f:
    json.dump({"belinfante": [[pair(z) for z in row] for row in theta]}, f, indent=1)
