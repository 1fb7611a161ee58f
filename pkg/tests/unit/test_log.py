# Copyright (c) 2022, hybrid_residual authors. All rights reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
import logging

from hybrid_residual.log import LOG_FILE_NAME, add_log_file_handler, init_logger, remove_log_file_handler


def test_init_logger_caps_third_party_loggers():
    init_logger(verbose=True, colored_logs=False)

    assert logging.getLogger("torch").level == logging.WARNING


def test_log_file_handler_mirrors_package_logs(tmp_path):
    handler = add_log_file_handler(tmp_path)
    try:
        logging.getLogger("hybrid_residual.world").warning("wedged at 12 mm")
    finally:
        remove_log_file_handler(handler)

    assert "wedged at 12 mm" in (tmp_path / LOG_FILE_NAME).read_text()
    assert handler not in logging.getLogger().handlers
