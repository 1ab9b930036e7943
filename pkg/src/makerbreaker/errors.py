"""Exception types shared across the package."""


class MakerBreakerError(Exception):
    pass


class InvalidEdge(MakerBreakerError, ValueError):
    pass


class InvalidRank(MakerBreakerError, ValueError):
    pass


class InvalidParameters(MakerBreakerError, ValueError):
    pass


class IllegalMove(MakerBreakerError):
    """A player tried to claim an edge that is already taken (or not on the board)."""

    def __init__(self, player: str, message: str):
        super().__init__(f"illegal move by {player}: {message}")
        self.player = player


class StrategyFailure(MakerBreakerError):
    """A strategy could not produce a move it is obliged to make.

    Usually means the bias is outside the regime where the strategy is
    guaranteed to work.
    """


class SizeLimitExceeded(MakerBreakerError, ValueError):
    pass


class RecordParseError(MakerBreakerError, ValueError):
    pass
