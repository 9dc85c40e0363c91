"""Configuration management for bisym using TOML."""

import shutil
from datetime import datetime
from pathlib import Path
from typing import Any, Final

import tomlkit
from platformdirs import user_config_dir
from tomlkit import TOMLDocument
from tomlkit.exceptions import TOMLKitError
from tomlkit.items import Table

_DEFAULT_CONFIG: Final[dict[str, Any]] = {
    "verification": {
        "tolerance": 1e-7,
    },
    "sampler": {
        "count": 1000,
        "seed": 42,
        "trace": "zero",
    },
    "output": {
        "format": "json",
    },
    "logging": {
        "level": "WARNING",
        "file": False,
    },
}


def default_config_path() -> Path:
    return Path(user_config_dir("bisym")) / "bisym.toml"


class Configuration:
    """Manages bisym configuration with TOML files."""

    def __init__(self, config_path: Path | None = None):
        """
        Initialize configuration.

        Args:
            config_path: Path to config file. Defaults to ~/.config/bisym/bisym.toml
        """
        self.config_path = config_path if config_path is not None else default_config_path()
        self._config: dict[str, Any] = {}
        self._toml_doc: TOMLDocument | None = None
        self._load_config()

    def _backup_config(self) -> None:
        """Backup current config file with .old suffix and timestamp."""
        if not self.config_path.exists():
            return

        timestamp: str = datetime.now().strftime("%Y%m%d_%H%M%S")
        backup_path: Path = self.config_path.parent / f"{self.config_path.name}.{timestamp}.old"

        shutil.copy2(self.config_path, backup_path)

    def _migrate_config(self) -> None:
        """Back up the current file and replace it with the defaults."""
        self._backup_config()
        self._create_default_config()
        self._load_config()

    def _validate_config_structure(self) -> bool:
        """
        Validate that all expected sections and options are present.

        Returns:
            True if config is valid, False if migration is needed
        """
        for section, options in _DEFAULT_CONFIG.items():
            if not isinstance(self._config.get(section), dict):
                return False

            for option in options:
                if option not in self._config[section]:
                    return False

        return True

    def _create_default_config(self) -> None:
        """Create default configuration file with comments."""
        self.config_path.parent.mkdir(parents=True, exist_ok=True)

        doc: TOMLDocument = tomlkit.document()

        doc.add(tomlkit.comment("bisym configuration file"))
        doc.add(tomlkit.comment("This file was automatically generated"))
        doc.add(tomlkit.nl())

        verification_section: Table = tomlkit.table()
        verification_section.add(tomlkit.comment("Largest accepted eigenvalue error, relative to 1 + λ1"))
        verification_section.add(tomlkit.comment("Used by construct, verify and sample unless --tol is given"))
        verification_section.add("tolerance", _DEFAULT_CONFIG["verification"]["tolerance"])
        doc.add("verification", verification_section)

        sampler_section: Table = tomlkit.table()
        sampler_section.add(tomlkit.comment("Number of spectra drawn by the sample command"))
        sampler_section.add("count", _DEFAULT_CONFIG["sampler"]["count"])
        sampler_section.add(tomlkit.nl())
        sampler_section.add(tomlkit.comment("Seed for the random generator; equal seeds give identical output"))
        sampler_section.add("seed", _DEFAULT_CONFIG["sampler"]["seed"])
        sampler_section.add(tomlkit.nl())
        sampler_section.add(tomlkit.comment('Trace constraint on drawn spectra: "zero" or "positive"'))
        sampler_section.add("trace", _DEFAULT_CONFIG["sampler"]["trace"])
        doc.add("sampler", sampler_section)

        output_section: Table = tomlkit.table()
        output_section.add(tomlkit.comment('Report format: "json", "csv" or "plain"'))
        output_section.add(tomlkit.comment("The sample command always defaults to csv"))
        output_section.add("format", _DEFAULT_CONFIG["output"]["format"])
        doc.add("output", output_section)

        logging_section: Table = tomlkit.table()
        logging_section.add(tomlkit.comment("Level of diagnostics written to stderr"))
        logging_section.add("level", _DEFAULT_CONFIG["logging"]["level"])
        logging_section.add(tomlkit.nl())
        logging_section.add(tomlkit.comment("Also keep a rotating debug log in the user log directory"))
        logging_section.add("file", _DEFAULT_CONFIG["logging"]["file"])
        doc.add("logging", logging_section)

        with open(self.config_path, "w", encoding="utf-8") as f:
            f.write(tomlkit.dumps(doc))

    def _load_config(self) -> None:
        """Load configuration from file or create default."""
        self.config_path.parent.mkdir(parents=True, exist_ok=True)

        if not self.config_path.exists():
            self._create_default_config()

        try:
            with open(self.config_path, encoding="utf-8") as f:
                self._toml_doc = tomlkit.parse(f.read())
                self._config = self._toml_doc.unwrap()

            if not self._validate_config_structure():
                self._migrate_config()

        except (TOMLKitError, OSError):
            # Migrate if config is corrupted or unreadable
            self._migrate_config()

    def _get_nested_value(self, keys: list[str], default: Any = None) -> Any:
        """Get a nested value from the configuration."""
        current = self._config
        for key in keys:
            if isinstance(current, dict) and key in current:
                current = current[key]
            else:
                return default
        return current

    def _section_value(self, section: str, option: str) -> Any:
        return self._get_nested_value([section, option], _DEFAULT_CONFIG[section][option])

    @property
    def tolerance(self) -> float:
        """Get the eigenvalue verification tolerance."""
        return float(self._section_value("verification", "tolerance"))

    @property
    def sample_count(self) -> int:
        return int(self._section_value("sampler", "count"))

    @property
    def sample_seed(self) -> int:
        return int(self._section_value("sampler", "seed"))

    @property
    def sample_trace(self) -> str:
        """Get the trace constraint for sampling ("zero" or "positive")."""
        return str(self._section_value("sampler", "trace"))

    @property
    def output_format(self) -> str:
        return str(self._section_value("output", "format"))

    @property
    def log_level(self) -> str:
        return str(self._section_value("logging", "level")).upper()

    @property
    def log_to_file(self) -> bool:
        """Get whether to write the rotating debug log."""
        return bool(self._section_value("logging", "file"))

    def reload(self) -> None:
        """Reload configuration from file."""
        self._load_config()

    def get(self, key: str, default: Any = None) -> Any:
        """
        Get a configuration value by dot notation.

        Args:
            key: Dot notation key (e.g., "sampler.seed")
            default: Default value if key not found

        Returns:
            Configuration value or default
        """
        keys: list[str] = key.split(".")
        return self._get_nested_value(keys, default)


# Global configuration instance
_config_instance: Configuration | None = None


def get_config(config_path: Path | None = None) -> Configuration:
    """
    Get the global configuration instance.

    A different config_path than the one currently loaded replaces the instance.

    Args:
        config_path: Optional path to config file

    Returns:
        Configuration instance
    """
    global _config_instance

    wanted = config_path if config_path is not None else default_config_path()
    if _config_instance is None or _config_instance.config_path != wanted:
        _config_instance = Configuration(wanted)

    return _config_instance
