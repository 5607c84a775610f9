import os
import sys

import hypothesis

# make both the helper oracles and (when not installed) the package importable
sys.path.insert(0, os.path.dirname(__file__))
_src = os.path.join(os.path.dirname(__file__), os.pardir, "src")
if os.path.isdir(_src):
    sys.path.insert(0, os.path.abspath(_src))

hypothesis.settings.register_profile(
    "ci", max_examples=60, deadline=None,
    suppress_health_check=[hypothesis.HealthCheck.too_slow])
hypothesis.settings.load_profile("ci")
