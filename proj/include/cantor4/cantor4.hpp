#pragma once

#include "cantor4/check_report.hpp"
#include "cantor4/csv.hpp"
#include "cantor4/digit_system.hpp"
#include "cantor4/frequency.hpp"
#include "cantor4/index_op.hpp"
#include "cantor4/parallel.hpp"
#include "cantor4/spectral.hpp"
#include "cantor4/summation.hpp"
#include "cantor4/transform.hpp"
