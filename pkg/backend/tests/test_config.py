"""Tests for core.config settings."""
import pytest
from pydantic import ValidationError

from core.config import Settings, get_settings


class TestDefaults:
    """Tests for default values."""

    def test_caps(self):
        """Should cap enumeration at 20 leaves and 16 choices."""
        settings = Settings()
        assert settings.leaf_cap == 20
        assert settings.choice_cap == 16

    def test_generator_defaults(self):
        """Should generate small trees on one worker."""
        settings = Settings()
        assert (settings.generator_min_leaves, settings.generator_max_leaves) == (2, 6)
        assert settings.generator_max_depth == 4
        assert settings.generator_share_probability == 0.25
        assert settings.analysis_workers == 1


class TestEnvironment:
    """Tests for BOWTIE_* overrides."""

    def test_leaf_cap_override(self, monkeypatch):
        """Should read the leaf cap from the environment."""
        monkeypatch.setenv("BOWTIE_LEAF_CAP", "8")
        assert Settings().leaf_cap == 8

    def test_empty_value_is_ignored(self, monkeypatch):
        """Should keep the default for an empty variable."""
        monkeypatch.setenv("BOWTIE_CHOICE_CAP", "")
        assert Settings().choice_cap == 16

    def test_cap_upper_bound(self, monkeypatch):
        """Should reject caps that make enumeration infeasible."""
        monkeypatch.setenv("BOWTIE_LEAF_CAP", "64")
        with pytest.raises(ValidationError):
            Settings()

    def test_get_settings_is_cached(self, monkeypatch):
        """Should return the same instance until the cache is cleared."""
        first = get_settings()
        monkeypatch.setenv("BOWTIE_LEAF_CAP", "5")
        assert get_settings() is first

        get_settings.cache_clear()
        assert get_settings().leaf_cap == 5


class TestValidators:
    """Tests for the field and model validators."""

    @pytest.mark.parametrize("value", ["DEBUG", " Debug ", "debug"])
    def test_log_level_normalised(self, value):
        """Should accept any case and surrounding space."""
        assert Settings(log_level=value).log_level == "debug"

    def test_unknown_log_level(self):
        """Should reject unknown levels."""
        with pytest.raises(ValidationError):
            Settings(log_level="verbose")

    @pytest.mark.parametrize(
        "value, expected",
        [
            ("*", ["*"]),
            ("", ["*"]),
            ("http://a.test, http://b.test", ["http://a.test", "http://b.test"]),
            ('["http://a.test"]', ["http://a.test"]),
            (["http://c.test"], ["http://c.test"]),
        ],
    )
    def test_cors_origins(self, value, expected):
        """Should accept star, comma lists and JSON lists."""
        assert Settings(cors_origins=value).cors_origins == expected

    def test_generator_bounds(self):
        """Should reject a minimum above the maximum."""
        with pytest.raises(ValidationError):
            Settings(generator_min_leaves=5, generator_max_leaves=3)
