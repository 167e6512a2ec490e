"""Smoke test for the hlvkit Python extension."""
import json

import hlvkit

assert hlvkit.macdonald([2]) == "m[2] + (q+1)*m[1,1]"
assert hlvkit.hall_littlewood([1, 1]) == "m[2] + m[1,1]"
assert hlvkit.poincare(0, 2, "1,1;1,1;1,1") == ("1", 0)
assert hlvkit.poincare(1, 1, "1") == ("s^2 - 2*s + 1", 2)
assert hlvkit.springer([2], [1, 1], 0) == ["q + 1"]
assert hlvkit.flag_count([2], [1, 1], 2) == 3
assert hlvkit.centralizer_order([2], 2) == 6
lam, degree, _ = hlvkit.classify("0,x;0,0 @p=2,m=4")
assert (lam, degree) == ([1, 1], 1)
ok, report = hlvkit.verify("flags", 2, 3)
assert ok and json.loads(report)["passed"]
try:
    hlvkit.macdonald([1, 2])
except ValueError:
    pass
else:
    raise AssertionError("expected ValueError")
print("smoke test passed")
