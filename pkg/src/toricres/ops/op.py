"""Op: one asynchronous unit of computation over a dry and a wet context."""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import TYPE_CHECKING, Generic, TypeVar

T = TypeVar("T")


class Op(ABC, Generic[T]):
    """Every command, check and trial is an Op; wrappers compose around it."""

    @abstractmethod
    async def perform(self, dry: "DryContext", wet: "WetContext") -> T:
        ...

    @abstractmethod
    def metadata(self) -> "OpMetadata":
        ...


if TYPE_CHECKING:
    from toricres.ops.contexts import DryContext, WetContext
    from toricres.ops.metadata import OpMetadata
