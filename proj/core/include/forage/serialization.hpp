#pragma once

#include <string>

#include "forage/types.hpp"

namespace forage {

// JSON encodings of receipts and schedules. Doubles are written with enough
// digits to read back bit-exactly, so decode(encode(x)) == x.

std::string encode_receipt(const TaskReceipt& receipt);
TaskReceipt decode_receipt(const std::string& text);

std::string encode_schedule(const TaskSchedule& schedule);
TaskSchedule decode_schedule(const std::string& text);

}  // namespace forage
