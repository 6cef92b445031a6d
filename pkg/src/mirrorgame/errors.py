"""Exception hierarchy shared by all mirror game modules."""


class MirrorGameError(Exception):
    pass


class InvalidConfig(MirrorGameError, ValueError):
    pass


class InvalidParams(MirrorGameError, ValueError):
    pass


class OutOfRange(MirrorGameError, ValueError):
    pass


class WrongTurn(MirrorGameError):
    pass


class GameOver(MirrorGameError):
    pass


class ProtocolError(MirrorGameError):
    pass


class Exhausted(MirrorGameError):
    pass


class IncompleteCoverage(MirrorGameError, ValueError):
    pass


class DecodeFailure(MirrorGameError):
    pass


class ParamMismatch(MirrorGameError, ValueError):
    pass


class TooLarge(MirrorGameError, ValueError):
    pass
