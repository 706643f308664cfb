from .addonconfig import ClusterConfig, CustomAddonConfig, FactorConfig
from .baseconfig import BaseAddonConfig

__all__ = ["BaseAddonConfig", "ClusterConfig", "CustomAddonConfig", "FactorConfig"]
