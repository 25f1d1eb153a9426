"""Case runner for verification suites, sequential or with Ray."""

from __future__ import annotations

import logging
from collections.abc import Callable
from typing import Any

from extscale.core.models import CaseResult

logger = logging.getLogger(__name__)

CaseFunction = Callable[..., CaseResult]


class SuiteRunner:
    """Runs registered suite cases and returns results in registration order.

    Cases are independent pure computations, so the sequential and the
    Ray path produce identical results.

    Example:
        runner = SuiteRunner(num_cpus=4, use_ray=True)
        runner.register_case("power(1) K=16", interp_case, weight=spec, K=16)
        results = runner.run()
        runner.shutdown()
    """

    def __init__(
        self,
        num_cpus: int = 2,
        use_ray: bool = False,
    ) -> None:
        """Initialize the runner.

        Args:
            num_cpus: Number of CPUs to use for Ray
            use_ray: Whether to use Ray for parallelism (default False for testing)
        """
        self.num_cpus = num_cpus
        self.use_ray = use_ray
        self._cases: dict[str, tuple[CaseFunction, dict[str, Any]]] = {}
        self._ray_initialized = False

    def _init_ray(self) -> None:
        """Initialize Ray if needed."""
        if self.use_ray and not self._ray_initialized:
            import ray

            if not ray.is_initialized():
                ray.init(num_cpus=self.num_cpus, ignore_reinit_error=True)
            self._ray_initialized = True

    def register_case(self, case_id: str, function: CaseFunction, **kwargs: Any) -> None:
        """Register a case for execution.

        Args:
            case_id: Unique identifier for this case
            function: Module-level function returning a CaseResult
            **kwargs: Keyword arguments for the function

        Raises:
            ValueError: If the case id is already registered
        """
        if case_id in self._cases:
            raise ValueError(f"Case {case_id} already registered")
        self._cases[case_id] = (function, kwargs)

    def unregister_case(self, case_id: str) -> None:
        self._cases.pop(case_id, None)

    @property
    def case_ids(self) -> list[str]:
        return list(self._cases)

    def clear(self) -> None:
        self._cases.clear()

    def run(self) -> list[CaseResult]:
        """Execute every registered case.

        Returns:
            One CaseResult per case, in registration order
        """
        if not self.use_ray:
            results = []
            for case_id, (function, kwargs) in self._cases.items():
                logger.debug("running case %s", case_id)
                results.append(function(**kwargs))
            return results

        self._init_ray()
        import ray

        remote_cache: dict[CaseFunction, Any] = {}
        refs = []
        for function, kwargs in self._cases.values():
            if function not in remote_cache:
                remote_cache[function] = ray.remote(function)
            refs.append(remote_cache[function].remote(**kwargs))
        return list(ray.get(refs))

    def shutdown(self) -> None:
        """Shutdown Ray if initialized."""
        if self._ray_initialized:
            import ray

            ray.shutdown()
            self._ray_initialized = False
