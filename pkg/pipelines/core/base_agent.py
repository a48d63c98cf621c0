"""Abstract base class for all pipeline agents."""

from abc import ABC, abstractmethod
from typing import Any, Dict


class BaseAgent(ABC):
    """
    Abstract base class that all agents must inherit from.

    Agents are the execution units of a pipeline. Each agent reads the
    keys it needs from the accumulated context and returns only the keys
    it produces.
    """

    def __init__(self, name: str) -> None:
        """
        Initialize the agent.

        Args:
            name: Unique identifier for this agent.
        """
        self.name = name

    @abstractmethod
    def run(self, input_data: Dict[str, Any]) -> Dict[str, Any]:
        """
        Execute the agent's main logic.

        Args:
            input_data: Accumulated pipeline context.

        Returns:
            Dictionary containing output results.
        """
        pass

    def require(self, input_data: Dict[str, Any], *keys: str) -> None:
        """
        Assert that the upstream agents produced ``keys``.

        Raises:
            ValueError: If any key is missing from the context.
        """
        missing = [key for key in keys if key not in input_data]
        if missing:
            raise ValueError(
                f"Pipeline contract violation: {self.name} requires {missing} "
                f"but context only has {sorted(input_data)}"
            )

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(name={self.name!r})"
