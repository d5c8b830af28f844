"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where the model is defined."""

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")


class StepFailure(ArithmeticError):
    """The Numerov recurrence hit a vanishing coefficient."""

    def __init__(self, index):
        self.index = index
        super().__init__(
            f"Numerov step failed at grid index {index}: "
            "1 - h^2 f/12 vanished (grid too coarse for the potential)"
        )


class StateNotFound(LookupError):
    """No eigenvalue with the requested node count was bracketed."""

    def __init__(self, target_nodes, nodes_seen, window, reason=None):
        self.target_nodes = target_nodes
        self.nodes_seen = sorted(set(nodes_seen))
        self.window = window
        self.reason = reason
        msg = (
            f"no bracketed state with {target_nodes} nodes in window "
            f"({window[0]:.6g}, {window[1]:.6g}) Ha; node counts seen: {self.nodes_seen}"
        )
        if reason:
            msg += f" ({reason})"
        super().__init__(msg)


class DegenerateSolution(ValueError):
    pass


class SamplingFailure(RuntimeError):
    pass


class ContractError(ValueError):
    pass
