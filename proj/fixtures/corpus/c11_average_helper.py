def average(values):
    total = 0
    for v in values:
        total += v
    return total / len(values)

def rain():
    readings = []
    while True:
        line = input("Rainfall: ")
        if line == "-999":
            break
        try:
            reading = float(line)
        except ValueError as error:
            print("Skipping", line)
            continue
        if reading < 0:
            continue
        readings.append(reading)
    if len(readings) > 0:
        return average(readings)
    return 0

if __name__ == "__main__":
    print(rain())
