#include "lowfreq/audio.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>

#include "lowfreq/error.hpp"

namespace lowfreq {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatIeeeFloat = 3;
constexpr double kPcmScale = 32768.0;

std::uint32_t read_u32(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | static_cast<std::uint32_t>(p[1]) << 8 |
           static_cast<std::uint32_t>(p[2]) << 16 | static_cast<std::uint32_t>(p[3]) << 24;
}

std::uint16_t read_u16(const unsigned char* p) {
    return static_cast<std::uint16_t>(p[0] | p[1] << 8);
}

struct WavData {
    std::uint16_t format = 0;
    std::uint16_t channels = 0;
    std::uint32_t sample_rate = 0;
    std::uint16_t bits_per_sample = 0;
    std::vector<unsigned char> data;
};

WavData parse_wav(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorKind::IoFailure, "cannot open " + path);

    unsigned char riff[12];
    if (!in.read(reinterpret_cast<char*>(riff), 12) || std::memcmp(riff, "RIFF", 4) != 0 ||
        std::memcmp(riff + 8, "WAVE", 4) != 0) {
        raise(ErrorKind::MalformedHeader, path + " is not a RIFF/WAVE file");
    }

    WavData wav;
    bool have_fmt = false;
    bool have_data = false;
    unsigned char chunk_header[8];
    while (in.read(reinterpret_cast<char*>(chunk_header), 8)) {
        const std::uint32_t chunk_size = read_u32(chunk_header + 4);
        if (std::memcmp(chunk_header, "fmt ", 4) == 0) {
            if (chunk_size < 16) raise(ErrorKind::MalformedHeader, "fmt chunk too small in " + path);
            std::vector<unsigned char> fmt(chunk_size);
            if (!in.read(reinterpret_cast<char*>(fmt.data()), chunk_size)) {
                raise(ErrorKind::MalformedHeader, "truncated fmt chunk in " + path);
            }
            wav.format = read_u16(fmt.data());
            wav.channels = read_u16(fmt.data() + 2);
            wav.sample_rate = read_u32(fmt.data() + 4);
            wav.bits_per_sample = read_u16(fmt.data() + 14);
            have_fmt = true;
        } else if (std::memcmp(chunk_header, "data", 4) == 0) {
            wav.data.resize(chunk_size);
            if (!in.read(reinterpret_cast<char*>(wav.data.data()), chunk_size)) {
                raise(ErrorKind::MalformedHeader, "truncated data chunk in " + path);
            }
            have_data = true;
        } else {
            // other chunks are skipped; chunks are word-aligned
            in.seekg(chunk_size + (chunk_size & 1), std::ios::cur);
            continue;
        }
        if (chunk_size & 1) in.seekg(1, std::ios::cur);
    }
    if (!have_fmt || !have_data) {
        raise(ErrorKind::MalformedHeader, path + " lacks a mandatory fmt or data chunk");
    }
    if (wav.sample_rate == 0 || wav.channels == 0) {
        raise(ErrorKind::MalformedHeader, "zero sample rate or channel count in " + path);
    }
    const bool pcm16 = wav.format == kFormatPcm && wav.bits_per_sample == 16;
    const bool float32 = wav.format == kFormatIeeeFloat && wav.bits_per_sample == 32;
    if (!pcm16 && !float32) {
        raise(ErrorKind::UnsupportedEncoding,
              path + ": only PCM16 and IEEE float32 are supported");
    }
    return wav;
}

std::vector<std::vector<double>> decode_channels(const WavData& wav) {
    const std::size_t bytes_per_sample = wav.bits_per_sample / 8;
    const std::size_t stride = bytes_per_sample * wav.channels;
    const std::size_t n_frames = wav.data.size() / stride;
    std::vector<std::vector<double>> channels(wav.channels, std::vector<double>(n_frames));
    for (std::size_t i = 0; i < n_frames; ++i) {
        for (std::uint16_t ch = 0; ch < wav.channels; ++ch) {
            const unsigned char* p = wav.data.data() + i * stride + ch * bytes_per_sample;
            double value;
            if (wav.format == kFormatPcm) {
                const std::int16_t raw = static_cast<std::int16_t>(read_u16(p));
                value = static_cast<double>(raw) / kPcmScale;
            } else {
                std::uint32_t bits = read_u32(p);
                float f;
                std::memcpy(&f, &bits, 4);
                value = static_cast<double>(f);
            }
            channels[ch][i] = value;
        }
    }
    return channels;
}

void append_u32(std::vector<unsigned char>& out, std::uint32_t v) {
    out.push_back(static_cast<unsigned char>(v & 0xff));
    out.push_back(static_cast<unsigned char>((v >> 8) & 0xff));
    out.push_back(static_cast<unsigned char>((v >> 16) & 0xff));
    out.push_back(static_cast<unsigned char>((v >> 24) & 0xff));
}

void append_u16(std::vector<unsigned char>& out, std::uint16_t v) {
    out.push_back(static_cast<unsigned char>(v & 0xff));
    out.push_back(static_cast<unsigned char>((v >> 8) & 0xff));
}

}  // namespace

AudioBuffer read_wav(const std::string& path) {
    const WavData wav = parse_wav(path);
    if (wav.channels != 1) {
        raise(ErrorKind::MultiChannel,
              path + " has " + std::to_string(wav.channels) + " channels; downmix explicitly");
    }
    AudioBuffer buffer;
    buffer.sample_rate = static_cast<int>(wav.sample_rate);
    buffer.samples = std::move(decode_channels(wav)[0]);
    return buffer;
}

AudioBuffer read_wav_downmix(const std::string& path) {
    const WavData wav = parse_wav(path);
    const auto channels = decode_channels(wav);
    AudioBuffer buffer;
    buffer.sample_rate = static_cast<int>(wav.sample_rate);
    const std::size_t n = channels.empty() ? 0 : channels[0].size();
    buffer.samples.assign(n, 0.0);
    for (const auto& ch : channels) {
        for (std::size_t i = 0; i < n; ++i) buffer.samples[i] += ch[i];
    }
    const double scale = channels.empty() ? 1.0 : 1.0 / static_cast<double>(channels.size());
    for (double& s : buffer.samples) s *= scale;
    return buffer;
}

void write_wav(const AudioBuffer& buffer, const std::string& path, WavEncoding encoding) {
    const bool pcm = encoding == WavEncoding::pcm16;
    const std::uint16_t bits = pcm ? 16 : 32;
    const std::uint32_t bytes_per_sample = bits / 8;
    const std::uint32_t n = static_cast<std::uint32_t>(buffer.samples.size());
    const std::uint32_t data_size = n * bytes_per_sample;
    const std::uint32_t rate = static_cast<std::uint32_t>(buffer.sample_rate);

    std::vector<unsigned char> out;
    out.reserve(44 + data_size);
    out.insert(out.end(), {'R', 'I', 'F', 'F'});
    append_u32(out, 36 + data_size);
    out.insert(out.end(), {'W', 'A', 'V', 'E'});
    out.insert(out.end(), {'f', 'm', 't', ' '});
    append_u32(out, 16);
    append_u16(out, pcm ? kFormatPcm : kFormatIeeeFloat);
    append_u16(out, 1);
    append_u32(out, rate);
    append_u32(out, rate * bytes_per_sample);
    append_u16(out, static_cast<std::uint16_t>(bytes_per_sample));
    append_u16(out, bits);
    out.insert(out.end(), {'d', 'a', 't', 'a'});
    append_u32(out, data_size);

    if (pcm) {
        const double max_value = 1.0 - 1.0 / kPcmScale;
        for (double s : buffer.samples) {
            const double clamped = std::clamp(s, -1.0, max_value);
            const auto q = static_cast<std::int16_t>(std::lrint(clamped * kPcmScale));
            append_u16(out, static_cast<std::uint16_t>(q));
        }
    } else {
        for (double s : buffer.samples) {
            const float f = static_cast<float>(s);
            std::uint32_t v;
            std::memcpy(&v, &f, 4);
            append_u32(out, v);
        }
    }

    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) raise(ErrorKind::IoFailure, "cannot open " + path + " for writing");
    file.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
    if (!file) raise(ErrorKind::IoFailure, "short write to " + path);
}

}  // namespace lowfreq
