import logging

from Abstracts.ThreadTask import ThreadTask

logger = logging.getLogger(__name__)


class SolveTask(ThreadTask):
    """One sweep point. Posts ``(key, result, error)`` to the manager's queue."""

    def run(self) -> None:
        call, args = self._task
        self._running.set()
        try:
            result = call(*args)
            self.result_queue.put((self.key, result, None))
            logger.info("Finished sweep point %s", self.key)
        except Exception as error:
            logger.error("Sweep point %s failed: %s", self.key, error)
            self.result_queue.put((self.key, None, error))
        finally:
            self._running.clear()
            if self.slots is not None:
                self.slots.release()
