from hypothesis import HealthCheck, settings

# sieve warm-up on first use can blow the per-example deadline; determinism
# matters more here than shrink speed
settings.register_profile(
    "suite",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")
