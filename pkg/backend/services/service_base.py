from abc import ABC

from core.config import Settings, get_settings
from core.exceptions import TooManyChoices, TooManyLeaves


class ServiceBase(ABC):
    """
        Base class for all services: carries settings and the enumeration caps.
    """

    def __init__(self, settings: Settings | None = None):
        self.settings = settings or get_settings()

    @property
    def leaf_cap(self) -> int:
        return self.settings.leaf_cap

    @property
    def choice_cap(self) -> int:
        return self.settings.choice_cap

    def ensure_leaf_cap(self, count: int) -> None:
        if count > self.leaf_cap:
            raise TooManyLeaves(count, self.leaf_cap)

    def ensure_choice_cap(self, count: int) -> None:
        if count > self.choice_cap:
            raise TooManyChoices(count, self.choice_cap)
