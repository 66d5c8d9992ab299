"""
Named Parameter Profiles
"""

import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from core.errors import ConfigurationError, OutputError

from .logging_config import get_logger

# Initialize logger
logger = get_logger(__name__)

DEFAULT_PROFILES_FILE = Path(__file__).with_name("profiles.json")


@dataclass
class Profile:
    """A named, unit-tagged parameter set."""
    name: str
    description: str = ""
    unit: str = "omega_m"
    values: Dict[str, Any] = field(default_factory=dict)
    tags: List[str] = field(default_factory=list)


class ProfileRegistry:
    """Profiles loaded from a JSON registry file."""

    def __init__(self, profiles_file: Optional[Union[str, Path]] = None):
        self.profiles_file = Path(
            profiles_file or os.getenv("CRITOPT_PROFILES_FILE", DEFAULT_PROFILES_FILE)
        )
        self.profiles: Dict[str, Profile] = {}
        self._load_profiles()

    def _load_profiles(self):
        """Load profiles from file."""
        logger.debug(f"Loading profiles from {self.profiles_file}")

        try:
            with open(self.profiles_file, 'r', encoding='utf-8') as f:
                data = json.load(f)
        except OSError as e:
            raise OutputError(f"cannot read profiles file {self.profiles_file}: {e}") from e
        except json.JSONDecodeError as e:
            raise ConfigurationError(
                f"profiles file {self.profiles_file} is not valid JSON: {e}"
            ) from e

        for name, profile_data in data.get('profiles', {}).items():
            try:
                self.profiles[name] = Profile(**profile_data)
            except TypeError as e:
                raise ConfigurationError(f"malformed profile {name!r}: {e}") from e
            logger.debug(f"Loaded profile: {name}")

        logger.debug(f"Loaded {len(self.profiles)} profiles")

    def names(self) -> List[str]:
        return sorted(self.profiles)

    def get(self, name: str) -> Profile:
        if name not in self.profiles:
            available = ", ".join(self.names())
            raise ConfigurationError(f"unknown profile {name!r}; available: {available}")
        return self.profiles[name]
