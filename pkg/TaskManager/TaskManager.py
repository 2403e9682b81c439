import os
import queue
import threading
from typing import Any, Callable, Hashable, Iterable

from Abstracts.ThreadTask import ThreadTask
from TaskManager.SolveTask import SolveTask


class TaskManager:
    def __init__(self, threads: int | None = None):
        self.__tasks: list[ThreadTask] = []
        self.results: queue.Queue = queue.Queue()
        self.threads = max(1, threads or os.cpu_count() or 1)

    def register_task(self, task: ThreadTask):
        self.__tasks.append(task)

    def run_all_tasks(self) -> None:
        slots = threading.Semaphore(self.threads)
        for task in self.__tasks:
            slots.acquire()
            task.set_result_queue(self.results)
            task.set_slots(slots)
            task.start()
        for task in self.__tasks:
            if task.is_alive() or task.ident is not None:
                task.join()

    def get_task(self, uuid: str) -> ThreadTask | None:
        for task in self.__tasks:
            if task.task_id() == uuid:
                return task
        return None

    def collect(self) -> dict[Hashable, Any]:
        """Drain the result queue; the first failure is re-raised."""
        outcomes: dict[Hashable, Any] = {}
        failures = []
        while not self.results.empty():
            key, result, error = self.results.get()
            if error is not None:
                failures.append((key, error))
            else:
                outcomes[key] = result
        if failures:
            raise sorted(failures, key=lambda item: repr(item[0]))[0][1]
        return outcomes

    def map(self, call: Callable[..., Any], keys: Iterable[Hashable], *shared) -> list[Any]:
        """Run ``call(key, *shared)`` for every key; results come back in key order."""
        keys = list(keys)
        for key in keys:
            self.register_task(SolveTask(key, call, key, *shared))
        self.run_all_tasks()
        outcomes = self.collect()
        return [outcomes[key] for key in keys]
