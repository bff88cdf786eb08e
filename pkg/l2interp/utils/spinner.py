import asyncio
import itertools
import os
import sys
import threading
from typing import Optional

from colorama import Fore, init

from l2interp.utils.logger import Logger

init(autoreset=True)

FRAME_SECONDS = 0.1


class Spinner:
    """
    Progress indicator for long computations, drawn on stderr.

    With ``total`` set, ``advance(label)`` counts finished work items and the
    line shows ``message (done/total)``. On a non-TTY stream, in CI or with
    DISABLE_SPINNER=TRUE nothing is animated and progress is logged instead.
    """

    def __init__(self, message="Processing...", color=Fore.GREEN, stream=None, total: Optional[int] = None):
        self.message = message
        self.color = color
        self.stream = stream or sys.stderr
        self.total = total
        self.done = 0
        self.is_ci = (
            os.getenv('DISABLE_SPINNER', 'FALSE').upper() == 'TRUE'
            or os.getenv("GITHUB_ACTIONS") == "true"
            or not getattr(self.stream, "isatty", lambda: False)()
        )
        self._running = False
        self._frames = itertools.cycle(["|", "/", "-", "\\"])
        self._lock = threading.Lock()
        self._loop = None
        self._thread = None
        self._task = None

    def __enter__(self):
        self.start()
        return self

    def __exit__(self, exc_type, exc, tb):
        self.stop()
        return False

    @property
    def status(self) -> str:
        if self.total is None:
            return self.message
        return f"{self.message} ({self.done}/{self.total})"

    def advance(self, label: str = ""):
        """Marks one work item finished; safe to call from worker threads."""
        with self._lock:
            self.done += 1
            done = self.done
        if self.is_ci:
            suffix = f" of {self.total}" if self.total is not None else ""
            Logger.get_logger().info(f"Finished {label or 'item'} ({done}{suffix})")

    def start(self):
        if self.is_ci:
            Logger.get_logger().info(self.message)
            return
        self._running = True
        self._loop = asyncio.new_event_loop()
        self._thread = threading.Thread(target=self._run_loop, daemon=True)
        self._thread.start()

    def stop(self):
        if self.is_ci:
            Logger.get_logger().info(f"{self.message} - finished processing.")
            return
        self._running = False
        if self._loop:
            if self._loop.is_running():
                asyncio.run_coroutine_threadsafe(self._cleanup(), self._loop).result()
            self._loop.call_soon_threadsafe(self._loop.stop)
            self._thread.join()
            self._loop.close()
        self.stream.write("\r" + " " * (len(self.status) + 4) + "\r")
        self.stream.flush()

    async def _cleanup(self):
        if self._task:
            self._task.cancel()
            try:
                await self._task
            except asyncio.CancelledError:
                pass

    def _run_loop(self):
        asyncio.set_event_loop(self._loop)
        self._task = self._loop.create_task(self._animate())
        self._loop.run_forever()

    async def _animate(self):
        while self._running:
            self.stream.write(f"\r{self.color}{self.status} {next(self._frames)}")
            self.stream.flush()
            await asyncio.sleep(FRAME_SECONDS)
