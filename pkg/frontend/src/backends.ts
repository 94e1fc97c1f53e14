import { createHash } from 'node:crypto';
import type { Kind } from './protocol.js';

export interface Backend {
  /** Handle one request payload for one kind; throws on per-item failure. */
  handle(kind: Kind, payload: string | string[]): Promise<string | number | number[]>;
}

export interface BackendConfig {
  /** Model identity advertised by the server (configurable; the protocol, not the model, is normative). */
  models?: Partial<Record<Kind, string>>;
  /** When set, forward every request to an HTTP endpoint speaking the same line protocol. */
  proxyUrl?: string;
}

export const DEFAULT_MODELS: Record<Kind, string> = {
  text_to_amr: 'bart-amr-parser',
  amr_to_text: 't5-amr-generator',
  perplexity: 'gpt2-scorer',
  embed: 'supervised-contrastive-embedder',
};

function stableHash(text: string): bigint {
  const digest = createHash('sha256').update(text, 'utf-8').digest();
  return digest.readBigUInt64BE(0);
}

function words(sentence: string): string[] {
  return (sentence.toLowerCase().match(/[a-z0-9]+/g) ?? []).filter((w) => w.length > 0);
}

function single(payload: string | string[]): string {
  if (typeof payload === 'string') return payload;
  throw new Error('expected a single string payload');
}

/**
 * Deterministic stand-in backend. It fulfils the wire contract exactly:
 * AMR output is a single PENMAN expression, perplexity is a positive
 * per-token-normalized real (exp of the mean negative token log-prob),
 * embeddings are fixed-size numeric vectors.
 */
export class DeterministicBackend implements Backend {
  async handle(kind: Kind, payload: string | string[]): Promise<string | number | number[]> {
    switch (kind) {
      case 'text_to_amr':
        return this.textToAmr(single(payload));
      case 'amr_to_text':
        return this.amrToText(single(payload));
      case 'perplexity':
        return this.perplexity(single(payload));
      case 'embed':
        return this.embed(single(payload));
    }
  }

  textToAmr(sentence: string): string {
    const tokens = words(sentence);
    if (tokens.length === 0) {
      throw new Error('no words to parse');
    }
    // chain graph: (z1 / w1 :op1 (z2 / w2 ...))
    const parts: string[] = [];
    tokens.forEach((w, i) => {
      parts.push(`(z${i + 1} / ${w}`);
      if (i < tokens.length - 1) parts.push(`:op${i + 1} `);
    });
    return parts.join(' ') + ')'.repeat(tokens.length);
  }

  amrToText(linearized: string): string {
    // concepts appear right after each "variable /" pair
    const concepts = [...linearized.matchAll(/\(\s*\S+\s*\/\s*([^\s()]+)/g)].map((m) => m[1]);
    if (concepts.length === 0) {
      throw new Error('no concepts found in linearized graph');
    }
    const sentence = concepts.map((c) => c.replace(/-\d+$/, '')).join(' ');
    return sentence.charAt(0).toUpperCase() + sentence.slice(1) + '.';
  }

  /** exp of the mean negative log-probability per token. */
  perplexity(sentence: string): number {
    const tokens = words(sentence);
    if (tokens.length === 0) return 1.0;
    let sumNegLogProb = 0;
    for (let i = 0; i < tokens.length; i++) {
      const context = tokens.slice(Math.max(0, i - 2), i + 1).join(' ');
      // pseudo token log-prob in [-6, -1]
      sumNegLogProb += 1 + Number(stableHash(context) % 5000n) / 1000;
    }
    return Math.exp(sumNegLogProb / tokens.length);
  }

  embed(sentence: string, dims = 16): number[] {
    const vec = new Array<number>(dims).fill(0);
    const text = `^${sentence.toLowerCase()}$`;
    for (let i = 0; i + 3 <= text.length; i++) {
      const h = stableHash(text.slice(i, i + 3));
      const idx = Number(h % BigInt(dims));
      vec[idx] += (h >> 8n) % 2n === 0n ? 1 : -1;
    }
    if (!vec.some((v) => v !== 0)) vec[0] = 1;
    return vec;
  }
}

/** Forwards request lines unchanged to an HTTP model server. */
export class ProxyBackend implements Backend {
  constructor(private readonly url: string) {}

  async handle(kind: Kind, payload: string | string[]): Promise<string | number | number[]> {
    const body = JSON.stringify({ id: '0', kind, payload }) + '\n';
    const response = await fetch(this.url, {
      method: 'POST',
      headers: { 'Content-Type': 'application/x-ndjson' },
      body,
    });
    if (!response.ok) {
      throw new Error(`upstream returned HTTP ${response.status}`);
    }
    const line = (await response.text()).split('\n').find((l) => l.trim());
    if (!line) throw new Error('empty upstream response');
    const data = JSON.parse(line);
    if (!data.ok) throw new Error(String(data.error ?? 'upstream error'));
    return data.payload;
  }
}

export function createBackend(config: BackendConfig = {}): Backend {
  if (config.proxyUrl) return new ProxyBackend(config.proxyUrl);
  return new DeterministicBackend();
}
