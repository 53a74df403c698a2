#pragma once

#include "urlkit/encoding.h"
#include "urlkit/error.h"
#include "urlkit/host.h"
#include "urlkit/parser.h"
#include "urlkit/scanners.h"
#include "urlkit/scheme.h"
#include "urlkit/url.h"
