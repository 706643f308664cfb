import pytest
from pydantic import ValidationError

from barycenter_rooms_pkg.configuration.addonconfig import ClusterConfig, CustomAddonConfig, FactorConfig
from barycenter_rooms_pkg.configuration.baseconfig import BaseAddonConfig


class TestBaseAddonConfig:
    def test_base_config_creation(self):
        config = BaseAddonConfig(
            id="test_addon_id",
            type="test_type",
            name="test_addon",
            description="Test addon description",
        )

        assert config.id == "test_addon_id"
        assert config.type == "test_type"
        assert config.name == "test_addon"
        assert config.description == "Test addon description"
        assert config.enabled is True

    def test_base_config_defaults(self):
        config = BaseAddonConfig(id="test_id", type="test_type", name="test", description="Test description")

        assert config.enabled is True
        assert config.config == {}

    def test_base_config_allows_extra_fields(self):
        config = BaseAddonConfig(id="a", type="b", name="c", description="d", region="eu")

        assert config.region == "eu"

    def test_base_config_rejects_blank_id(self):
        with pytest.raises(ValidationError, match="id must not be blank"):
            BaseAddonConfig(id="  ", type="b", name="c")


class TestClusterConfig:
    def test_defaults(self):
        cfg = ClusterConfig()

        assert cfg.restarts == 100
        assert cfg.armijo_alpha == 0.3
        assert cfg.update_rate == 1.0
        assert cfg.cov_reg is None
        assert cfg.dissimilarity == "euclidean"

    @pytest.mark.parametrize(
        "field, value",
        [
            ("armijo_alpha", 0.5),
            ("armijo_beta", 1.0),
            ("update_rate", 0.0),
            ("fuzzy_exponent", 1.0),
            ("restarts", 0),
            ("workers", 0),
            ("cov_reg", -1.0),
            ("dissimilarity", "cosine"),
        ],
    )
    def test_invalid_values_name_the_field(self, field, value):
        with pytest.raises(ValidationError, match=field):
            ClusterConfig(**{field: value})

    def test_assignment_is_validated(self):
        cfg = ClusterConfig()

        with pytest.raises(ValidationError):
            cfg.update_rate = 2.0


class TestFactorConfig:
    def test_defaults(self):
        cfg = FactorConfig()

        assert cfg.alpha == 0.025
        assert cfg.eta == 0.5
        assert cfg.iters == 50000
        assert cfg.quad_nodes == 801
        assert cfg.init == "pc1"

    def test_even_nodes_rejected(self):
        with pytest.raises(ValidationError, match="odd"):
            FactorConfig(quad_nodes=800)

    def test_alpha_range(self):
        with pytest.raises(ValidationError, match="alpha"):
            FactorConfig(alpha=1.0)


class TestCustomAddonConfig:
    def test_custom_config_creation_success(self, sample_config):
        config = CustomAddonConfig(**sample_config)

        assert config.id == "barycenter-test"
        assert config.type == "analytics"
        assert config.clustering.restarts == 3
        assert config.clustering.seed == 1
        assert config.factor.iters == 200
        assert config.normalize is True
        assert config.log_level == "WARNING"

    def test_custom_config_with_custom_values(self):
        config = CustomAddonConfig(
            id="x",
            name="x",
            description="x",
            normalize=False,
            log_level="debug",
            clustering=ClusterConfig(workers=4),
        )

        assert config.normalize is False
        assert config.log_level == "debug"
        assert config.clustering.workers == 4

    def test_unknown_log_level(self):
        with pytest.raises(ValidationError, match="Unknown log level"):
            CustomAddonConfig(id="x", name="x", description="x", log_level="LOUD")

    def test_nested_validation_error(self):
        with pytest.raises(ValidationError, match="max_iters"):
            CustomAddonConfig(id="x", name="x", description="x", clustering={"max_iters": 0})
