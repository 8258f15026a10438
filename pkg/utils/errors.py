class TorusError(Exception):
    """Base de todos os erros do pacote."""


class DomainError(TorusError, ValueError):
    pass


class ConfigError(TorusError, ValueError):
    pass


class PreconditionError(TorusError, ValueError):
    pass


class CoincidentPointsError(TorusError, ValueError):
    """g(w, w) = -inf: os dois pontos coincidem no toro."""


class ConvergenceError(TorusError, RuntimeError):
    def __init__(self, message: str, best=None):
        super().__init__(message)
        # melhor resultado parcial (ex.: MinimizeResult)
        self.best = best


class SweepError(TorusError):
    def __init__(self, message: str, re_tau: float, im_tau: float):
        super().__init__(f"{message} (nó re={re_tau!r}, im={im_tau!r})")
        self.message = message
        self.re_tau = re_tau
        self.im_tau = im_tau

    def __reduce__(self):
        # precisa voltar inteiro dos workers do Pool
        return type(self), (self.message, self.re_tau, self.im_tau)


class SweepConvergenceError(SweepError, ConvergenceError):
    """Nó da varredura cuja série estourou max_terms."""
