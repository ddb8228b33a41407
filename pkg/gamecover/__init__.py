from loguru import logger as _logger
# as per Loguru documentation's recommendation for libraries
_logger.disable(__name__)
