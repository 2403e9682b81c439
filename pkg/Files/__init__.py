from Files.File import File
from Files.Tables import csv_bytes, json_bytes, format_value
