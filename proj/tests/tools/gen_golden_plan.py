#!/usr/bin/env python3
# Copyright 2026 The etchog Authors
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
"""Writes the golden cipher plan used by cipher_test.

Standalone reimplementation of SplitMix64, rejection-sampled bounded draws,
and the descending Fisher-Yates shuffle. Kept independent of the C++ code.
"""
import sys

MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed):
        self.state = seed & MASK

    def next(self):
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        return z ^ (z >> 31)

    def below(self, n):
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            v = self.next()
            if v < limit:
                return v % n


def plan(k1, k2, k3, m):
    perm = list(range(1, m + 1))
    g = SplitMix64(k1)
    for i in range(m - 1, 0, -1):
        j = g.below(i + 1)
        perm[i], perm[j] = perm[j], perm[i]
    g2, g3 = SplitMix64(k2), SplitMix64(k3)
    transforms = []
    for _ in range(m):
        d = g2.next()
        r = g3.next()
        transforms.append((d & 3, (d >> 2) & 1, r & 1))
    return perm, transforms


def main():
    k1, k2, k3, m = 0x0123456789ABCDEF, 0xFEDCBA9876543210, 42, 504
    perm, transforms = plan(k1, k2, k3, m)
    out = sys.stdout
    out.write("k1 %d k2 %d k3 %d m %d\n" % (k1, k2, k3, m))
    out.write("perm " + " ".join(map(str, perm)) + "\n")
    for rot, flip, neg in transforms:
        out.write("%d %d %d\n" % (rot, flip, neg))


if __name__ == "__main__":
    main()
