import { createInterface } from 'node:readline';
import type { Readable, Writable } from 'node:stream';
import { createBackend, type Backend, type BackendConfig } from './backends.js';
import {
  errorResponse,
  okResponse,
  parseRequestLine,
  serializeResponse,
  type Kind,
} from './protocol.js';

export interface ServerOptions extends BackendConfig {
  /** Restrict the server to one kind; others get ok:false responses. */
  kind?: Kind | 'all';
}

/**
 * Run the line-delimited protocol loop until end-of-input: one response
 * line per request line, correlated by id.  Malformed lines produce an
 * ok:false line and the loop continues.
 */
export async function serve(
  input: Readable,
  output: Writable,
  options: ServerOptions = {},
): Promise<void> {
  const backend: Backend = createBackend(options);
  const only = options.kind && options.kind !== 'all' ? options.kind : null;
  const rl = createInterface({ input, crlfDelay: Infinity });
  for await (const line of rl) {
    if (!line.trim()) continue;
    let response;
    try {
      const request = parseRequestLine(line);
      if (only && request.kind !== only) {
        response = errorResponse(request.id, `this server only handles ${only}`);
      } else {
        try {
          response = okResponse(request.id, await backend.handle(request.kind, request.payload));
        } catch (e) {
          response = errorResponse(request.id, (e as Error).message);
        }
      }
    } catch (e) {
      response = errorResponse('', (e as Error).message);
    }
    output.write(serializeResponse(response) + '\n');
  }
}
