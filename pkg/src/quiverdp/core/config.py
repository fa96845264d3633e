"""Global configuration for quiverdp"""

import tomllib
from pathlib import Path
from typing import Any

import msgspec
import tomli_w

QUIVERDP_DIR = Path.home() / ".quiverdp"
CONFIG_FILE = QUIVERDP_DIR / "config.toml"


class QuiverDPConfig(msgspec.Struct):
    """Global quiverdp configuration"""

    # Arithmetic: 0 for the rationals, otherwise an odd prime
    characteristic: int = 0

    # Verification sampling
    samples: int = 20
    seed: int = 0

    # Evaluation guards
    cap_size: int = 10  # max t+2r and t+2s for a DP evaluation
    oracle_cap: int = 3000  # max monomials in an oracle basis

    # Enumeration
    limit: int = 0  # 0 = exhaust the quintuple stream
    jobs: int = 0  # 0 = available parallelism

    # Run output
    out_dir: str = "out"

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary for TOML serialization"""
        return {
            "arithmetic": {
                "characteristic": self.characteristic,
            },
            "verification": {
                "samples": self.samples,
                "seed": self.seed,
                "oracle_cap": self.oracle_cap,
            },
            "enumeration": {
                "cap_size": self.cap_size,
                "limit": self.limit,
                "jobs": self.jobs,
            },
            "run": {
                "out_dir": self.out_dir,
            },
        }


# Global config instance
_config: QuiverDPConfig | None = None


def get_config() -> QuiverDPConfig:
    """Get the global configuration (loads from file if needed)"""
    global _config
    if _config is None:
        _config = load_config()
    return _config


def load_config() -> QuiverDPConfig:
    """Load configuration from file"""
    global _config

    if not CONFIG_FILE.exists():
        _config = QuiverDPConfig()
        return _config

    try:
        with open(CONFIG_FILE, "rb") as f:
            data = tomllib.load(f)

        defaults = QuiverDPConfig()
        arithmetic = data.get("arithmetic", {})
        verification = data.get("verification", {})
        enumeration = data.get("enumeration", {})
        run = data.get("run", {})
        _config = QuiverDPConfig(
            characteristic=arithmetic.get("characteristic", defaults.characteristic),
            samples=verification.get("samples", defaults.samples),
            seed=verification.get("seed", defaults.seed),
            oracle_cap=verification.get("oracle_cap", defaults.oracle_cap),
            cap_size=enumeration.get("cap_size", defaults.cap_size),
            limit=enumeration.get("limit", defaults.limit),
            jobs=enumeration.get("jobs", defaults.jobs),
            out_dir=run.get("out_dir", defaults.out_dir),
        )
        return _config

    except Exception:
        _config = QuiverDPConfig()
        return _config


def save_config(config: QuiverDPConfig | None = None) -> None:
    """Save configuration to file"""
    global _config

    if config is not None:
        _config = config

    if _config is None:
        _config = QuiverDPConfig()

    QUIVERDP_DIR.mkdir(parents=True, exist_ok=True)

    with open(CONFIG_FILE, "wb") as f:
        tomli_w.dump(_config.to_dict(), f)


def update_config(**kwargs) -> QuiverDPConfig:
    """Update specific config values and save

    Unknown keys raise; values are converted to the field type.
    """
    global _config

    if _config is None:
        _config = load_config()

    current = msgspec.structs.asdict(_config)
    for key, value in kwargs.items():
        if key not in current:
            raise ValueError(f"Unknown config key: {key}")
        current[key] = value

    # msgspec.Struct is not validated on init; convert() enforces field types
    _config = msgspec.convert(current, QuiverDPConfig, strict=False)
    save_config(_config)
    return _config


def override_config(**kwargs) -> QuiverDPConfig:
    """Set values for this process only (command-line flags); nothing is saved"""
    global _config

    current = msgspec.structs.asdict(get_config())
    for key, value in kwargs.items():
        if key not in current:
            raise ValueError(f"Unknown config key: {key}")
        current[key] = value
    _config = msgspec.convert(current, QuiverDPConfig, strict=False)
    return _config


def reset_config() -> None:
    """Drop the cached configuration (for testing)"""
    global _config
    _config = None
