import threading
import uuid
from typing import Callable, Any, Hashable
from abc import ABC, abstractmethod
import queue


class ThreadTask(ABC, threading.Thread):
    def __init__(self, key: Hashable, call: Callable[..., Any], *args):
        super().__init__(daemon=True)
        self._uuid = uuid.uuid4()
        self._running = threading.Event()
        self._task = [call, [*args]]
        self.key = key
        self.result_queue: queue.Queue | None = None
        self.slots: threading.Semaphore | None = None

    def set_result_queue(self, result_queue: queue.Queue) -> None:
        self.result_queue = result_queue

    def set_slots(self, slots: threading.Semaphore) -> None:
        self.slots = slots

    @abstractmethod
    def run(self) -> None:
        pass

    def is_running(self) -> bool:
        return self._running.is_set()

    def task_id(self) -> str:
        return str(self._uuid)
