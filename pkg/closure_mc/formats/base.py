from abc import ABC, abstractmethod
from pathlib import Path
from typing import Mapping, Optional, Sequence, Union

from closure_mc.spaces.model import ClosureModel

Color = Union[str, tuple[int, int, int]]


class ModelFormat(ABC):
    @staticmethod
    @abstractmethod
    def recognize(header: bytes) -> bool:
        """Recognize whether a file starting with the given bytes is in this format"""
        pass

    @property
    @abstractmethod
    def name(self) -> str:
        """Name of the format"""
        pass

    @abstractmethod
    def load(
        self,
        path: Union[str, Path],
        palette: Optional[Mapping[str, Color]] = None,
        masks: Optional[Sequence[tuple[Union[str, Path], str]]] = None,
    ) -> ClosureModel:
        """Load the model stored at path"""
        pass
