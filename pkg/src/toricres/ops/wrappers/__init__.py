from toricres.ops.wrappers.logging_wrapper import LoggingWrapper
from toricres.ops.wrappers.retry_wrapper import RetryWrapper
from toricres.ops.wrappers.timeout_wrapper import TimeBoundWrapper
from toricres.ops.wrappers.validating_wrapper import ValidatingWrapper

__all__ = ["LoggingWrapper", "RetryWrapper", "TimeBoundWrapper", "ValidatingWrapper"]
