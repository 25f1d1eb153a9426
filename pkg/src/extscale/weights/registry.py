"""Weight family registry for building weights from configuration."""

from __future__ import annotations

from collections.abc import Mapping
from typing import Any, Callable, TypeVar

from extscale.core.errors import WeightDomainError
from extscale.weights.base import RoWeight

T = TypeVar("T", bound=RoWeight)


class WeightRegistry:
    """Registry of weight families.

    Families register under the name used as the ``family`` key of a
    weight spec and are instantiated from the remaining spec keys.

    Example:
        registry = WeightRegistry()

        @registry.register("power")
        class PowerWeight(RoWeight):
            ...

        phi = registry.create({"family": "power", "s": 2.0})
    """

    def __init__(self) -> None:
        self._families: dict[str, type[RoWeight]] = {}

    def register(self, name: str) -> Callable[[type[T]], type[T]]:
        """Decorator to register a weight family.

        Args:
            name: Family name used in weight specs

        Returns:
            Decorator function

        Raises:
            ValueError: If name is already registered
        """

        def decorator(cls: type[T]) -> type[T]:
            if name in self._families:
                raise ValueError(f"Weight family '{name}' is already registered")
            cls.family = name
            self._families[name] = cls
            return cls

        return decorator

    def get(self, name: str) -> type[RoWeight]:
        """Get a registered family class by name.

        Raises:
            KeyError: If the family is not registered
        """
        if name not in self._families:
            raise KeyError(f"Weight family '{name}' is not registered")
        return self._families[name]

    def create(self, spec: Mapping[str, Any]) -> RoWeight:
        """Instantiate a weight from a spec mapping.

        Args:
            spec: Mapping with a ``family`` key plus family parameters;
                an optional ``label`` key is ignored

        Returns:
            Weight instance

        Raises:
            KeyError: If the family is unknown
            WeightDomainError: If the parameters do not fit the family
        """
        params = {k: v for k, v in spec.items() if k not in ("family", "label")}
        cls = self.get(str(spec["family"]))
        try:
            return cls(**params)
        except TypeError as exc:
            raise WeightDomainError(f"bad parameters for family '{cls.family}': {exc}") from exc

    def list_families(self) -> list[str]:
        return list(self._families.keys())

    def unregister(self, name: str) -> None:
        """Remove a family from the registry.

        Raises:
            KeyError: If the family is not registered
        """
        if name not in self._families:
            raise KeyError(f"Weight family '{name}' is not registered")
        del self._families[name]


weight_registry = WeightRegistry()


def weight_from_spec(spec: Mapping[str, Any]) -> RoWeight:
    """Build a weight from a config spec using the default registry."""
    # families register on import
    import extscale.weights.families  # noqa: F401

    return weight_registry.create(spec)
