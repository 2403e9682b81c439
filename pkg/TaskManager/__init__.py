from TaskManager.SolveTask import SolveTask
from TaskManager.TaskManager import TaskManager
