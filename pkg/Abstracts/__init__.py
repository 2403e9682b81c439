from Abstracts.ThreadTask import ThreadTask
from Abstracts.FitModel import FitModel
