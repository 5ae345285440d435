import sys
import threading

from hypothesis import HealthCheck, settings

# the rewriter recurses on long words
sys.setrecursionlimit(20000)
threading.stack_size(256 * 1024 * 1024)

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")
