# Copyright 2026 The lipagg Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Regenerates the synthetic check-in fixtures.

checkins.csv: 600 users, 6 districts, two strongly correlated work classes.
weak_checkins.csv: same shape, district almost independent of the class.
"""

import random



def write(path, seed, weights):
    rng = random.Random(seed)
    rows = ["user,x,g"]
    for i in range(600):
        g = "office" if rng.random() < 0.55 else "field"
        x = rng.choices(range(1, 7), weights=weights[g])[0]
        rows.append(f"user{i:04d},{x},{g}")
    with open(path, "w") as f:
        f.write("\n".join(rows) + "\n")


write("checkins.csv", 20261015,
      {"office": [30, 25, 15, 12, 10, 8], "field": [8, 10, 12, 15, 25, 30]})
write("weak_checkins.csv", 20261016,
      {"office": [17, 17, 16, 16, 17, 17], "field": [16, 17, 17, 17, 16, 17]})
