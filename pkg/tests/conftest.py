import pytest

from kinkfactor.presets import parse_preset, run_pipeline


@pytest.fixture(scope="session")
def pipeline():
    """Cached pipeline runner keyed by (preset id, gamma sign)."""
    cache = {}

    def run(preset_id: str, gamma_sign: str = "positive"):
        key = (preset_id, gamma_sign)
        if key not in cache:
            cache[key] = run_pipeline(parse_preset(preset_id), gamma_sign)
        return cache[key]

    return run
