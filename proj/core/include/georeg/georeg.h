#ifndef GEOREG_GEOREG_H_
#define GEOREG_GEOREG_H_

#include "georeg/eigen.h"
#include "georeg/error.h"
#include "georeg/geometric.h"
#include "georeg/linalg.h"
#include "georeg/ols.h"
#include "georeg/special_functions.h"
#include "georeg/spectral.h"
#include "georeg/summary.h"

#endif  // GEOREG_GEOREG_H_
