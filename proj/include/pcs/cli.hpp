#pragma once
namespace pcs {
int run(int argc, char** argv);
}
