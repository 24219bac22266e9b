# Copyright 2026 The tfqsim Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Teleportation coefficients a, b from their defining integrals.

a = -1/2 * int (e^{i w t} + 1) psi_0 f~_0 dw * int (e^{i w t} - 1) f~_1 f~_1 dw
b = -1/2 * int (e^{i w t} + 1) psi_1 f~_0 dw * int (e^{i w t} - 1) f~_0 f~_1 dw
with t = pi / wb and every comb normalized to unit L2 norm.
"""
import sys

import mpmath as mp

from gkp_overlap import comb, integral

mp.mp.dps = 25


def coefficients(s, st, k, kt, wb=1):
    t = mp.pi / wb
    nmax = int(mp.ceil(max(k, kt) / wb * mp.sqrt(2 * mp.log(1e8)))) + 1

    def f(mu, width, env):
        return lambda w: comb(w, mu, wb, width, env, nmax)

    psi0, psi1 = f(0, s, k), f(1, s, k)
    e0, e1 = f(0, st, kt), f(1, st, kt)
    norm = {}
    for name, g in (("p0", psi0), ("p1", psi1), ("e0", e0), ("e1", e1)):
        norm[name] = mp.sqrt(integral(lambda w: g(w) ** 2, wb, nmax))

    def j(g, h, sign):
        re = integral(lambda w: (mp.cos(w * t) + sign) * g(w) * h(w), wb, nmax)
        im = integral(lambda w: mp.sin(w * t) * g(w) * h(w), wb, nmax)
        return mp.mpc(re, im)

    a = -j(psi0, e0, 1) * j(e1, e1, -1) / (2 * norm["p0"] * norm["e0"] * norm["e1"] ** 2)
    b = -j(psi1, e0, 1) * j(e0, e1, -1) / (2 * norm["p1"] * norm["e0"] * norm["e0"] * norm["e1"])
    return a, b


if __name__ == "__main__":
    s, st, k, kt = (float(x) for x in sys.argv[1:5])
    a, b = coefficients(s, st, k, kt)
    print(f"a={mp.nstr(a, 15)} b={mp.nstr(b, 15)}")
