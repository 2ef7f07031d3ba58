from .pi_table_connector import PiTableConnector
